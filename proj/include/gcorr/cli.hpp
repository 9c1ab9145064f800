#pragma once

// The `gcorr` command line: one subcommand per module operation.  Exit codes:
// 0 pass, 1 mathematical failure (violations printed), 2 input error.

#include <CLI11.hpp>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "gcorr/gcorr.hpp"

namespace gcorr {

  namespace cli {

    struct Flags {
      std::string   document;
      std::size_t   depth   = 6;
      std::size_t   cap     = 3;
      std::size_t   wordcap = 4;
      std::size_t   m       = 0;
      std::size_t   triples = 50;
      std::uint64_t seed    = 1;
      std::string   format  = "text";
      std::string   op, lhs, rhs, word, point, action;
    };

    // Collects output so text and machine modes share one code path.
    class Out {
     public:
      explicit Out(bool machine) : _machine(machine) {}

      void line(std::string const& s) {
        if (!_machine) {
          _text += s + "\n";
        }
      }
      void rec(Record r) {
        if (_machine) {
          _recs.push_back(std::move(r));
        }
      }
      // Reports are printed in both modes; returns ok().
      bool report(Report const& r) {
        if (_machine) {
          auto rs = to_records(r);
          _recs.insert(_recs.end(), rs.begin(), rs.end());
        } else {
          _text += to_text(r);
        }
        _ok = _ok && r.ok();
        return r.ok();
      }
      void fail() {
        _ok = false;
      }
      [[nodiscard]] bool ok() const {
        return _ok;
      }
      [[nodiscard]] std::string str() const {
        return _machine ? write_records(_recs) : _text;
      }

     private:
      bool                _machine;
      bool                _ok = true;
      std::string         _text;
      std::vector<Record> _recs;
    };

    // "ab..." is the cylinder label; a bare finite path whose source is in
    // R is not a point of Ω(R), so it is read as a cylinder too.
    inline Point parse_point(Correspondence const& C, RegSet const& R,
                             std::string s) {
      bool cyl = false;
      if (s.size() > 3 && s.compare(s.size() - 3, 3, "...") == 0) {
        cyl = true;
        s.resize(s.size() - 3);
      }
      auto p = C.parse_path(s);
      return Point{p, cyl || R[p.source]};
    }

    inline std::string edge_ids(Path const& p) {
      std::string out;
      for (int x : p.edges) {
        out += (out.empty() ? "" : ",") + std::to_string(x);
      }
      return out;
    }

    inline std::vector<FiniteAction const*> selected(Document const& d,
                                                     Flags const&    f) {
      std::vector<FiniteAction const*> out;
      if (!f.action.empty()) {
        out.push_back(&d.action(f.action));
        return out;
      }
      for (auto const& A : d.actions) {
        out.push_back(&A);
      }
      if (out.empty()) {
        throw input_error("document has no [action ...] section");
      }
      return out;
    }

    inline std::string need(std::string const& v, std::string const& flag) {
      if (v.empty()) {
        throw input_error("missing required flag " + flag);
      }
      return v;
    }

    ////////////////////////////////////////////////////////////////////
    // subcommands
    ////////////////////////////////////////////////////////////////////

    inline void cmd_validate(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      o.line("kind: " + d.kind);
      o.rec(Record{"document", {}}
                .add("kind", d.kind)
                .add("objects", C.base().object_count())
                .add("edges", C.edge_count())
                .add("actions", d.actions.size()));
      o.report(validateCorrespondence(C, f.wordcap));
      o.report(check_regset(C, d.R));
      for (auto const& A : d.actions) {
        o.report(validateAction(A, C, d.R, std::min<std::size_t>(f.wordcap, 2)));
      }
    }

    inline void cmd_paths(Document const& d, Flags const& f, Out& o) {
      auto const& C     = d.corr;
      std::size_t total = 0;
      for (std::size_t k = 0; k <= f.depth; ++k) {
        auto ps = C.pathsOfLength(k);
        o.line("level " + std::to_string(k) + ": " + std::to_string(ps.size())
               + " paths");
        for (auto const& p : ps) {
          o.line("  " + C.path_name(p));
          o.rec(Record{"path", {}}.add("level", k).add("name", C.path_name(p)));
        }
        total += ps.size();
      }
      o.line("total: " + std::to_string(total));
      o.rec(Record{"summary", {}}.add("total", total));
    }

    inline void cmd_omega(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      if (f.m > f.depth) {
        throw input_error("--m must not exceed --depth");
      }
      auto om = buildOmega(C, f.m, f.depth);
      o.line("Omega[" + std::to_string(f.m) + "," + std::to_string(f.depth)
             + "]: " + std::to_string(om.size()) + " points");
      for (auto const& p : om.points()) {
        o.line("  " + C.path_name(p));
        o.rec(Record{"point", {}}
                  .add("level", p.size())
                  .add("edges", edge_ids(p))
                  .add("source", C.base().object_name(p.source))
                  .add("name", C.path_name(p)));
      }
      o.report(circIdentification(C, f.m, f.depth,
                                  std::min<std::size_t>(f.wordcap, 2))
                   .report);
      o.report(amnAudit(C, f.m, f.depth, f.triples, f.seed));
    }

    inline void cmd_boundary(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      auto        b = buildBoundary(C, d.R, f.depth);
      o.line("boundary at depth " + std::to_string(f.depth) + ": "
             + std::to_string(b.points.size()) + " points");
      for (auto const& p : b.points) {
        o.line("  " + point_name(C, p));
        o.rec(Record{"point", {}}
                  .add("level", p.path.size())
                  .add("edges", edge_ids(p.path))
                  .add("source", C.base().object_name(p.path.source))
                  .add("boundary", std::string(p.cylinder ? "cylinder"
                                                          : "finite"))
                  .add("name", point_name(C, p)));
      }
      o.rec(Record{"summary", {}}.add("points", b.points.size()));
    }

    inline void cmd_isg(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      if (!f.word.empty()) {
        using K  = Letter::Kind;
        auto w   = parse_word(C, f.word);
        auto nf  = isgFreeReduceOracle(C, w);
        auto acc = ISElement::one();
        for (auto const& l : w) {
          auto t = l.kind == K::E       ? theta_edge(C, l.edge)
                   : l.kind == K::Estar ? isgAdjoint(C, theta_edge(C, l.edge))
                                        : theta_arrow(C, l.g);
          acc = isgMultiply(C, acc, t);
        }
        o.line("oracle: " + element_name(C, nf));
        o.line("multiply: " + element_name(C, acc));
        o.rec(Record{"word", {}}
                  .add("oracle", element_name(C, nf))
                  .add("multiply", element_name(C, acc)));
        Report r("word reduction");
        if (!(nf == acc)) {
          r.fail("reduction", "isgMultiply disagrees with the free-reduction "
                              "oracle",
                 f.word);
        }
        o.report(r);
        return;
      }
      auto s = parse_element(C, need(f.lhs, "--lhs"));
      if (!f.rhs.empty()) {
        auto t  = parse_element(C, f.rhs);
        auto st = isgMultiply(C, s, t);
        o.line(element_name(C, s) + "  .  " + element_name(C, t) + "  =  "
               + element_name(C, st));
        o.rec(Record{"product", {}}
                  .add("lhs", element_name(C, s))
                  .add("rhs", element_name(C, t))
                  .add("result", element_name(C, st)));
        return;
      }
      auto a = isgAdjoint(C, s);
      o.line("element: " + element_name(C, s));
      o.line("adjoint: " + element_name(C, a));
      o.line(std::string("idempotent: ")
             + (isgIsIdempotent(C, s) ? "yes" : "no"));
      o.rec(Record{"element", {}}
                .add("name", element_name(C, s))
                .add("adjoint", element_name(C, a))
                .add("idempotent",
                     std::string(isgIsIdempotent(C, s) ? "yes" : "no")));
    }

    inline void cmd_germ(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      auto        s = parse_element(C, need(f.op, "--op"));
      auto        w = parse_point(C, d.R, need(f.point, "--point"));
      if (!f.rhs.empty()) {
        auto t = parse_element(C, f.rhs);
        auto v = germEquals(C, d.R, s, t, w);
        o.line("germs at " + point_name(C, w) + ": " + v.str());
        o.rec(Record{"germ-equals", {}}
                  .add("point", point_name(C, w))
                  .add("verdict", v.str()));
        return;
      }
      auto img = germApply(C, d.R, s, w, f.depth);
      std::string state = img.state == Defn::Defined     ? "defined"
                          : img.state == Defn::Undefined ? "undefined"
                                                         : "indeterminate";
      std::string val = img.state == Defn::Defined ? point_name(C, img.point)
                                                   : "";
      o.line(element_name(C, s) + " at " + point_name(C, w) + ": " + state
             + (val.empty() ? "" : " -> " + val));
      o.rec(Record{"germ", {}}
                .add("point", point_name(C, w))
                .add("state", state)
                .add("image", val));
    }

    inline void cmd_model(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      auto        T = enumerateArrows(C, d.R, f.depth, f.cap,
                                      std::min<std::size_t>(f.wordcap, 2));
      o.line("objects: " + std::to_string(T.objects.points.size()));
      for (std::size_t i = 0; i < T.objects.points.size(); ++i) {
        auto n = point_name(C, T.objects.points[i]);
        o.line("  [" + std::to_string(i) + "] " + n);
        o.rec(Record{"object", {}}.add("index", i).add("name", n));
      }
      o.line("arrows: " + std::to_string(T.arrows.size()));
      for (std::size_t a = 0; a < T.arrows.size(); ++a) {
        auto const& g = T.arrows[a];
        o.line("  " + std::to_string(g.range) + " <- "
               + std::to_string(g.source) + "  [" + element_name(C, g.rep)
               + "]" + (g.flagged ? "  (flagged)" : ""));
        o.rec(Record{"arrow", {}}
                  .add("index", a)
                  .add("source", g.source)
                  .add("range", g.range)
                  .add("rep", element_name(C, g.rep))
                  .add("flagged", std::string(g.flagged ? "yes" : "no")));
      }
      o.report(T.report);
      o.report(restrictToR(C, d.R, f.cap, std::min<std::size_t>(f.wordcap, 2)));
    }

    inline void cmd_diagnose(Document const& d, Flags const& f, Out& o) {
      auto dg = diagnose(d.corr, d.R, f.depth,
                         std::min<std::size_t>(f.wordcap, 2));
      o.report(dg.report);
      for (auto const& w : dg.witnesses) {
        o.line("  witness: " + w);
        o.rec(Record{"witness", {}}.add("text", w));
      }
      for (auto const& w : dg.effectiveness_candidates) {
        o.line("  effectiveness candidate: " + w);
        o.rec(Record{"effectiveness", {}}.add("text", w));
      }
    }

    inline void cmd_fock(Document const& d, Flags const& f, Out& o) {
      auto const& C   = d.corr;
      auto        rep = Rep::fock(C, f.depth, f.wordcap);
      if (!f.op.empty()) {
        auto s  = parse_element(C, f.op);
        auto rs = export_triplets(rep, rep.op(s), element_name(C, s));
        for (auto const& r : rs) {
          o.rec(r);
          std::string t = r.type;
          for (auto const& [k, v] : r.fields) {
            t += " " + k + "=" + v;
          }
          o.line(t);
        }
        return;
      }
      o.report(checkToeplitzRelations(rep));
    }

    inline void cmd_ck(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      auto        fock = Rep::fock(C, f.depth, f.wordcap);
      auto        bnd  = Rep::boundary(C, d.R, f.depth);
      bool        level0 = true;
      bool        any    = false;
      for (int v = 0; v < C.base().object_count(); ++v) {
        if (!d.R[v]) {
          continue;
        }
        any     = true;
        auto fd = ckDefect(fock, d.R, v);
        auto bd = ckDefect(bnd, d.R, v);
        level0  = level0 && fd.report.ok()
                 && fd.report.fact_value("defect_support_levels") == "0";
        o.report(fd.report);
        o.report(bd.report);
      }
      if (!any) {
        o.line("R is empty: no defect to compute");
        o.rec(Record{"note", {}}.add("text", "R is empty"));
      } else if (level0) {
        o.line("defect support: level 0 only");
        o.rec(Record{"defect", {}}.add("support", "level0"));
      } else {
        o.line("defect support: not confined to level 0");
        o.rec(Record{"defect", {}}.add("support", "other"));
        o.fail();
      }
      o.report(checkCovariantRep(bnd, d.R, std::min<std::size_t>(f.cap, 2),
                                 std::min<std::size_t>(f.wordcap, 1)));
    }

    inline void cmd_crosscheck(Document const& d, Flags const& f, Out& o) {
      o.report(crossCheckMainTheorem(d.corr, d.R, f.depth,
                                     std::max<std::size_t>(f.cap, 3),
                                     std::min<std::size_t>(f.wordcap, 1)));
    }

    inline void cmd_action_validate(Document const& d, Flags const& f,
                                    Out& o) {
      for (auto const* A : selected(d, f)) {
        bool ok = o.report(validateAction(*A, d.corr, d.R,
                                          std::min<std::size_t>(f.wordcap, 2)));
        if (ok) {
          o.report(composeXY(*A, d.corr, std::min<std::size_t>(f.wordcap, 2))
                       .report);
        }
      }
    }

    inline void cmd_universal_map(Document const& d, Flags const& f, Out& o) {
      auto const& C = d.corr;
      for (auto const* A : selected(d, f)) {
        auto chk = validateAction(*A, C, d.R);
        if (!chk.ok()) {
          o.report(chk);
          continue;
        }
        auto img = universalMap(*A, C, d.R, f.depth);
        o.line("action " + A->name + " at depth " + std::to_string(f.depth)
               + ":");
        for (std::size_t y = 0; y < A->size(); ++y) {
          o.line("  " + A->points[y] + " -> " + point_name(C, img[y]));
          o.rec(Record{"map", {}}
                    .add("action", A->name)
                    .add("point", A->points[y])
                    .add("image", point_name(C, img[y])));
        }
      }
    }

    inline void cmd_uniqueness(Document const& d, Flags const& f, Out& o) {
      for (auto const* A : selected(d, f)) {
        auto u = uniquenessAudit(*A, d.corr, f.depth);
        o.line("action " + A->name + ": " + std::to_string(u.equivariant)
               + " equivariant of " + std::to_string(u.candidates)
               + " candidates (" + u.status + ")");
        o.rec(Record{"uniqueness", {}}
                  .add("action", A->name)
                  .add("status", u.status)
                  .add("candidates", u.candidates)
                  .add("equivariant", u.equivariant));
        o.report(u.report);
      }
    }

  }  // namespace cli

  inline int run_cli(int argc, char const* const* argv, std::ostream& out,
                     std::ostream& err) {
    using namespace cli;
    CLI::App app{"gcorr: groupoid correspondences, their models and "
                 "representations"};
    app.require_subcommand(1);
    Flags f;
    using Handler = std::function<void(Document const&, Flags const&, Out&)>;
    std::vector<std::pair<CLI::App*, Handler>> subs;

    auto add = [&](std::string const& name, std::string const& help,
                   Handler h) {
      auto* s = app.add_subcommand(name, help);
      s->add_option("document", f.document, "instance document")->required();
      s->add_option("--depth", f.depth, "truncation depth (6)");
      s->add_option("--cap", f.cap, "path-length cap (3)");
      s->add_option("--wordcap", f.wordcap, "word-length cap (4)");
      s->add_option("--seed", f.seed, "seed for randomized audits");
      s->add_option("--format", f.format, "text or machine")
          ->check(CLI::IsMember({"text", "machine"}));
      s->add_option("--op", f.op, "element p * g * q^");
      s->add_option("--lhs", f.lhs, "left element");
      s->add_option("--rhs", f.rhs, "right element");
      s->add_option("--word", f.word, "generator word, e.g. \"a b^ @g\"");
      s->add_option("--point", f.point, "label, e.g. ab or ab...");
      s->add_option("--m", f.m, "lower level for omega (0)");
      s->add_option("--triples", f.triples, "random triples for omega (50)");
      s->add_option("--action", f.action, "action name");
      subs.emplace_back(s, std::move(h));
    };
    add("validate", "validate groupoid, cocycle, R and actions", cmd_validate);
    add("paths", "list finite paths up to --depth", cmd_paths);
    add("omega", "Omega[m,n], circ identification and A[m,n] audit",
        cmd_omega);
    add("boundary", "boundary space labels at --depth", cmd_boundary);
    add("isg", "inverse semigroup products, adjoints, word reduction",
        cmd_isg);
    add("germ", "apply or compare germs at a point", cmd_germ);
    add("model", "enumerate the groupoid model and restrict to R", cmd_model);
    add("diagnose", "Hausdorff, condition (L), cofinality", cmd_diagnose);
    add("fock", "Toeplitz relations on the Fock representation", cmd_fock);
    add("ck", "Cuntz-Pimsner defect and covariance", cmd_ck);
    add("crosscheck", "germ operators vs generator words", cmd_crosscheck);
    add("action-validate", "validate actions and build X o Y",
        cmd_action_validate);
    add("universal-map", "the map into the universal action",
        cmd_universal_map);
    add("uniqueness", "count equivariant maps into the universal action",
        cmd_uniqueness);

    try {
      app.parse(argc, argv);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return 0;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    for (auto const& [s, h] : subs) {
      if (!s->parsed()) {
        continue;
      }
      try {
        auto doc = load_document(f.document);
        // explicit flag > document parameter > default
        for (std::string const k : {"depth", "cap", "wordcap", "seed"}) {
          auto p = doc.param(k);
          auto* opt = s->get_option_no_throw("--" + k);
          if (!p || (opt && opt->count() > 0)) {
            continue;
          }
          if (k == "depth") {
            f.depth = *p;
          } else if (k == "cap") {
            f.cap = *p;
          } else if (k == "wordcap") {
            f.wordcap = *p;
          } else {
            f.seed = *p;
          }
        }
        Out o(f.format == "machine");
        h(doc, f, o);
        out << o.str();
        return o.ok() ? 0 : 1;
      } catch (input_error const& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
      } catch (precondition_error const& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
      }
    }
    return 2;
  }

}  // namespace gcorr
