#pragma once

// Instance documents: a line-oriented text format with [sections].
//
//   # comment                       (also after '#' on any line)
//   [groupoid]
//   kind = set | group | groupoid | presented
//     set:       objects = v w
//     group:     object = *          elements = e a    mul a a = e
//     groupoid:  objects = v w       arrow g : w <- v
//                compose g h = k     inverse g = k     unit v = 1_v
//     presented: object = *  generators = z  identity = e  abelian = no
//   [edges]
//   x : v <- w                      (x has range v and source w)
//   [cocycle]
//   (g, x) -> (y, h)                (g∘x = y, g|_x = h)
//   [regular]
//   R = v w | regular | empty
//   [params]
//   depth = 6    cap = 3    wordcap = 4    seed = 1
//   [action NAME]
//   point y : v
//   act g y = y'
//   mu x y = y'
//
// serialize() writes the canonical form; parse(serialize(d)) == d.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gcorr/actions.hpp"
#include "gcorr/base.hpp"
#include "gcorr/correspondence.hpp"
#include "gcorr/error.hpp"
#include "gcorr/groupoid.hpp"

namespace gcorr {

  struct Document {
    std::string                                   kind;
    Correspondence                                corr;
    RegSet                                        R;
    std::map<std::string, std::size_t>            params;
    std::vector<FiniteAction>                     actions;

    [[nodiscard]] std::optional<std::size_t> param(std::string const& k) const {
      auto it = params.find(k);
      if (it == params.end()) {
        return std::nullopt;
      }
      return it->second;
    }
    [[nodiscard]] FiniteAction const& action(std::string const& name) const {
      for (auto const& a : actions) {
        if (a.name == name) {
          return a;
        }
      }
      throw input_error("no action named '" + name + "'");
    }
  };

  namespace detail {
    inline std::vector<std::string> words(std::string const& s) {
      std::istringstream       is(s);
      std::vector<std::string> out;
      std::string              w;
      while (is >> w) {
        out.push_back(w);
      }
      return out;
    }

    // "key = value" split; nullopt without '='.
    inline std::optional<std::pair<std::string, std::string>>
    key_value(std::string const& s) {
      auto eq = s.find('=');
      if (eq == std::string::npos) {
        return std::nullopt;
      }
      return std::make_pair(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }

    struct Line {
      std::size_t no;
      std::string text;
    };

    [[noreturn]] inline void bad(std::size_t no, std::string const& msg) {
      throw input_error("line " + std::to_string(no) + ": " + msg);
    }

    // Runs f, prefixing any input_error with the line number.
    template <typename F>
    void at_line(std::size_t no, F&& f) {
      try {
        f();
      } catch (input_error const& e) {
        std::string m = e.what();
        if (m.rfind("line ", 0) == 0) {
          throw;
        }
        bad(no, m);
      } catch (precondition_error const& e) {
        bad(no, e.what());
      }
    }

    inline Base build_base(std::vector<Line> const& lines,
                           std::string&             kind) {
      std::map<std::string, std::string> kv;
      std::vector<Line>                  rest;
      std::size_t                        kind_line = 0;
      for (auto const& l : lines) {
        auto w = words(l.text);
        if (w.empty()) {
          continue;
        }
        if (w[0] == "arrow" || w[0] == "compose" || w[0] == "inverse"
            || w[0] == "unit" || w[0] == "mul") {
          rest.push_back(l);
          continue;
        }
        auto p = key_value(l.text);
        if (!p) {
          bad(l.no, "expected key = value in [groupoid]");
        }
        if (p->first == "kind") {
          kind_line = l.no;
        }
        if (!kv.emplace(p->first, p->second).second) {
          bad(l.no, "duplicate key '" + p->first + "'");
        }
      }
      if (!kv.count("kind")) {
        throw input_error("[groupoid] needs kind = set|group|groupoid|"
                          "presented");
      }
      kind = kv["kind"];
      auto allow = [&](std::vector<std::string> const& keys) {
        for (auto const& [k, v] : kv) {
          if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            for (auto const& l : lines) {
              auto p = key_value(l.text);
              if (p && p->first == k) {
                bad(l.no, "unknown key '" + k + "' for kind " + kind);
              }
            }
          }
        }
      };
      auto need = [&](std::string const& k) {
        if (!kv.count(k)) {
          throw input_error("[groupoid] kind " + kind + " needs '" + k + "'");
        }
        return kv[k];
      };
      auto only = [&](std::vector<std::string> const& kws) {
        for (auto const& l : rest) {
          auto w = words(l.text)[0];
          if (std::find(kws.begin(), kws.end(), w) == kws.end()) {
            bad(l.no, "'" + w + "' is not allowed for kind " + kind);
          }
        }
      };

      if (kind == "set") {
        allow({"kind", "objects"});
        only({});
        return Base(makeSetGroupoid(words(need("objects"))));
      }
      if (kind == "presented") {
        allow({"kind", "object", "generators", "identity", "abelian"});
        only({});
        PresentedGroup P;
        P.generators = words(need("generators"));
        if (kv.count("object")) {
          P.object = kv["object"];
        }
        if (kv.count("identity")) {
          P.identity = kv["identity"];
        }
        if (kv.count("abelian")) {
          auto a = kv["abelian"];
          if (a != "yes" && a != "no") {
            bad(kind_line, "abelian must be yes or no");
          }
          P.abelian = a == "yes";
        }
        return Base(P);
      }
      if (kind == "group") {
        allow({"kind", "object", "elements"});
        only({"mul"});
        auto        els = words(need("elements"));
        std::string obj = kv.count("object") ? kv["object"] : "*";
        std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
            arrows;
        for (auto const& e : els) {
          arrows.push_back({e, {obj, obj}});
        }
        FiniteGroupoid G({obj}, arrows);
        for (auto const& l : rest) {
          auto w = words(l.text);  // mul a b = c
          if (w.size() != 5 || w[3] != "=") {
            bad(l.no, "expected: mul a b = c");
          }
          at_line(l.no, [&] {
            G.set_compose(G.arrow_index(w[1]), G.arrow_index(w[2]),
                          G.arrow_index(w[4]));
          });
        }
        // identity and inverses are read off the table
        auto n = static_cast<int>(G.arrow_count());
        for (int a = 0; a < n; ++a) {
          bool id = true;
          for (int b = 0; b < n && id; ++b) {
            id = G.compose(a, b) == b && G.compose(b, a) == b;
          }
          if (id) {
            G.set_unit(0, a);
            break;
          }
        }
        if (G.unit(0) >= 0) {
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
              if (G.compose(a, b) == G.unit(0)
                  && G.compose(b, a) == G.unit(0)) {
                G.set_inverse(a, b);
                break;
              }
            }
          }
        }
        return Base(G);
      }
      if (kind == "groupoid") {
        allow({"kind", "objects"});
        only({"arrow", "compose", "inverse", "unit"});
        auto objs = words(need("objects"));
        std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
                                 arrows;
        std::vector<std::size_t> arrow_lines;
        for (auto const& l : rest) {
          auto w = words(l.text);  // arrow g : w <- v
          if (w[0] != "arrow") {
            continue;
          }
          if (w.size() != 6 || w[2] != ":" || w[4] != "<-") {
            bad(l.no, "expected: arrow g : rng <- src");
          }
          arrows.push_back({w[1], {w[5], w[3]}});
          arrow_lines.push_back(l.no);
        }
        std::optional<FiniteGroupoid> G;
        try {
          G.emplace(objs, arrows);
        } catch (input_error const& e) {
          bad(arrow_lines.empty() ? 0 : arrow_lines[0], e.what());
        }
        for (auto const& l : rest) {
          auto w = words(l.text);
          if (w[0] == "compose") {  // compose g h = k
            if (w.size() != 5 || w[3] != "=") {
              bad(l.no, "expected: compose g h = k");
            }
            at_line(l.no, [&] {
              G->set_compose(G->arrow_index(w[1]), G->arrow_index(w[2]),
                             G->arrow_index(w[4]));
            });
          } else if (w[0] == "inverse") {  // inverse g = k
            if (w.size() != 4 || w[2] != "=") {
              bad(l.no, "expected: inverse g = k");
            }
            at_line(l.no, [&] {
              G->set_inverse(G->arrow_index(w[1]), G->arrow_index(w[3]));
            });
          } else if (w[0] == "unit") {  // unit v = g
            if (w.size() != 4 || w[2] != "=") {
              bad(l.no, "expected: unit v = g");
            }
            at_line(l.no, [&] {
              G->set_unit(G->object_index(w[1]), G->arrow_index(w[3]));
            });
          }
        }
        return Base(*G);
      }
      bad(kind_line, "unknown kind '" + kind + "'");
    }

    inline std::string join(std::vector<std::string> const& v) {
      std::string out;
      for (auto const& s : v) {
        out += (out.empty() ? "" : " ") + s;
      }
      return out;
    }
  }  // namespace detail

  inline Document parse_document(std::string const& text) {
    using detail::bad;
    using detail::Line;
    Document                                 doc;
    std::vector<std::pair<std::string, std::vector<Line>>> sections;
    std::map<std::string, std::size_t>       seen;
    std::istringstream                       is(text);
    std::string                              raw;
    std::size_t                              no = 0;
    while (std::getline(is, raw)) {
      ++no;
      auto hash = raw.find('#');
      auto s    = detail::trim(hash == std::string::npos ? raw
                                                         : raw.substr(0, hash));
      if (s.empty()) {
        continue;
      }
      if (s.front() == '[') {
        if (s.back() != ']') {
          bad(no, "malformed section header");
        }
        auto name = detail::trim(s.substr(1, s.size() - 2));
        auto head = detail::words(name);
        if (head.empty()) {
          bad(no, "empty section header");
        }
        static std::vector<std::string> const known{
            "groupoid", "edges", "cocycle", "regular", "params", "action"};
        if (std::find(known.begin(), known.end(), head[0]) == known.end()) {
          bad(no, "unknown section [" + name + "]");
        }
        if (head[0] == "action" ? head.size() != 2 : head.size() != 1) {
          bad(no, "malformed section header [" + name + "]");
        }
        if (!seen.emplace(name, no).second) {
          bad(no, "duplicate section [" + name + "]");
        }
        sections.push_back({name, {}});
        continue;
      }
      if (sections.empty()) {
        bad(no, "content before the first section");
      }
      sections.back().second.push_back({no, s});
    }
    auto find = [&](std::string const& n) -> std::vector<Line> const* {
      for (auto const& [k, v] : sections) {
        if (k == n) {
          return &v;
        }
      }
      return nullptr;
    };
    auto const* gl = find("groupoid");
    if (!gl) {
      throw input_error("missing [groupoid] section");
    }
    Base base = detail::build_base(*gl, doc.kind);

    std::vector<Edge> edges;
    if (auto const* el = find("edges")) {
      for (auto const& l : *el) {
        auto w = detail::words(l.text);  // x : v <- w
        if (w.size() != 5 || w[1] != ":" || w[3] != "<-") {
          bad(l.no, "expected: name : rng <- src");
        }
        detail::at_line(l.no, [&] {
          edges.push_back(
              {w[0], base.object_index(w[2]), base.object_index(w[4])});
        });
      }
    }
    {
      // duplicate edge names are caught by the constructor; find the line
      std::map<std::string, std::size_t> names;
      if (auto const* el = find("edges")) {
        for (std::size_t i = 0; i < el->size(); ++i) {
          if (!names.emplace(edges[i].name, i).second) {
            bad((*el)[i].no, "duplicate edge '" + edges[i].name + "'");
          }
        }
      }
    }
    doc.corr = Correspondence(base, edges);
    auto const& C = doc.corr;

    if (auto const* cl = find("cocycle")) {
      for (auto const& l : *cl) {
        // (g, x) -> (y, h)
        std::string s = l.text;
        auto        arrow_pos = s.find("->");
        if (arrow_pos == std::string::npos) {
          bad(l.no, "expected: (g, x) -> (y, h)");
        }
        auto pair_of = [&](std::string t) {
          t = detail::trim(t);
          if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
            bad(l.no, "expected a parenthesised pair");
          }
          t           = t.substr(1, t.size() - 2);
          auto comma  = t.find(',');
          if (comma == std::string::npos
              || t.find(',', comma + 1) != std::string::npos) {
            bad(l.no, "expected a pair (a, b)");
          }
          return std::make_pair(detail::trim(t.substr(0, comma)),
                                detail::trim(t.substr(comma + 1)));
        };
        auto lhs = pair_of(s.substr(0, arrow_pos));
        auto rhs = pair_of(s.substr(arrow_pos + 2));
        detail::at_line(l.no, [&] {
          auto g = C.base().parse(lhs.first);
          auto x = C.edge_index(lhs.second);
          auto y = C.edge_index(rhs.first);
          auto h = C.base().parse(rhs.second);
          if (C.base().src(g) != C.edge(x).rng) {
            throw input_error("src(" + lhs.first + ") is not the range of "
                              + lhs.second);
          }
          doc.corr.set_row(g, x, y, h);
        });
      }
    }

    doc.R.assign(C.base().object_count(), false);
    if (auto const* rl = find("regular")) {
      bool set = false;
      for (auto const& l : *rl) {
        auto p = detail::key_value(l.text);
        if (!p || p->first != "R") {
          bad(l.no, "expected: R = vertices | regular | empty");
        }
        if (set) {
          bad(l.no, "R given twice");
        }
        set = true;
        if (p->second == "empty") {
          continue;
        }
        if (p->second == "regular") {
          for (int v : C.maximalProperSubset().regular) {
            doc.R[v] = true;
          }
          continue;
        }
        detail::at_line(l.no, [&] {
          for (auto const& v : detail::words(p->second)) {
            doc.R[C.base().object_index(v)] = true;
          }
        });
      }
    }

    if (auto const* pl = find("params")) {
      static std::vector<std::string> const keys{"depth", "cap", "wordcap",
                                                 "seed"};
      for (auto const& l : *pl) {
        auto p = detail::key_value(l.text);
        if (!p) {
          bad(l.no, "expected key = value in [params]");
        }
        if (std::find(keys.begin(), keys.end(), p->first) == keys.end()) {
          bad(l.no, "unknown parameter '" + p->first + "'");
        }
        std::size_t used = 0;
        std::size_t v    = 0;
        try {
          v = std::stoul(p->second, &used);
        } catch (...) {
          used = 0;
        }
        if (used == 0 || used != p->second.size()) {
          bad(l.no, "parameter '" + p->first + "' needs a number");
        }
        if (!doc.params.emplace(p->first, v).second) {
          bad(l.no, "parameter '" + p->first + "' given twice");
        }
      }
    }

    for (auto const& [name, lines] : sections) {
      auto head = detail::words(name);
      if (head[0] != "action") {
        continue;
      }
      FiniteAction A;
      A.name = head[1];
      A.mu.assign(C.edge_count(), {});
      for (auto const& l : lines) {
        auto w = detail::words(l.text);
        if (w[0] == "point") {  // point y : v
          if (w.size() != 4 || w[2] != ":") {
            bad(l.no, "expected: point y : v");
          }
          if (std::find(A.points.begin(), A.points.end(), w[1])
              != A.points.end()) {
            bad(l.no, "duplicate point '" + w[1] + "'");
          }
          detail::at_line(l.no, [&] {
            A.fiber.push_back(C.base().object_index(w[3]));
            A.points.push_back(w[1]);
          });
        } else if (w[0] == "act" || w[0] == "mu") {
          if (w.size() != 5 || w[3] != "=") {
            bad(l.no, "expected: " + w[0] + " a y = y'");
          }
          detail::at_line(l.no, [&] {
            int y = A.point_index(w[2]);
            int z = A.point_index(w[4]);
            if (w[0] == "act") {
              auto g = C.base().parse(w[1]);
              if (!A.gact.emplace(std::make_pair(g, y), z).second) {
                throw input_error("duplicate act row");
              }
            } else {
              auto e = C.edge_index(w[1]);
              if (!A.mu[e].emplace(y, z).second) {
                throw input_error("duplicate mu row");
              }
            }
          });
        } else {
          bad(l.no, "unknown action entry '" + w[0] + "'");
        }
      }
      doc.actions.push_back(std::move(A));
    }
    return doc;
  }

  inline Document load_document(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw input_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      return parse_document(ss.str());
    } catch (input_error const& e) {
      throw input_error(path + ": " + e.what());
    }
  }

  inline std::string serialize(Document const& doc) {
    std::ostringstream os;
    auto const&        C = doc.corr;
    auto const&        B = C.base();
    os << "[groupoid]\nkind = " << doc.kind << "\n";
    if (B.is_presented()) {
      auto const& P = B.presented();
      os << "object = " << P.object << "\n"
         << "generators = " << detail::join(P.generators) << "\n"
         << "identity = " << P.identity << "\n"
         << "abelian = " << (P.abelian ? "yes" : "no") << "\n";
    } else {
      auto const& G = B.finite();
      auto        n = static_cast<int>(G.arrow_count());
      if (doc.kind == "set") {
        os << "objects = " << detail::join(G.objects()) << "\n";
      } else if (doc.kind == "group") {
        os << "object = " << G.objects()[0] << "\n";
        std::vector<std::string> els;
        for (int a = 0; a < n; ++a) {
          els.push_back(G.arrow(a).id);
        }
        os << "elements = " << detail::join(els) << "\n";
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            if (G.compose(a, b) >= 0) {
              os << "mul " << G.arrow(a).id << " " << G.arrow(b).id << " = "
                 << G.arrow(G.compose(a, b)).id << "\n";
            }
          }
        }
      } else {
        os << "objects = " << detail::join(G.objects()) << "\n";
        for (int a = 0; a < n; ++a) {
          os << "arrow " << G.arrow(a).id << " : "
             << G.objects()[G.rng(a)] << " <- " << G.objects()[G.src(a)]
             << "\n";
        }
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            if (G.compose(a, b) >= 0) {
              os << "compose " << G.arrow(a).id << " " << G.arrow(b).id
                 << " = " << G.arrow(G.compose(a, b)).id << "\n";
            }
          }
        }
        for (int a = 0; a < n; ++a) {
          if (G.inverse(a) >= 0) {
            os << "inverse " << G.arrow(a).id << " = "
               << G.arrow(G.inverse(a)).id << "\n";
          }
        }
        for (int v = 0; v < static_cast<int>(G.object_count()); ++v) {
          if (G.unit(v) >= 0) {
            os << "unit " << G.objects()[v] << " = "
               << G.arrow(G.unit(v)).id << "\n";
          }
        }
      }
    }
    os << "\n[edges]\n";
    for (auto const& e : C.edges()) {
      os << e.name << " : " << B.object_name(e.rng) << " <- "
         << B.object_name(e.src) << "\n";
    }
    os << "\n[cocycle]\n";
    auto row = [&](Correspondence::CocycleRow const& r) {
      os << "(" << B.name(r.g) << ", " << C.edge(r.x).name << ") -> ("
         << C.edge(r.gx).name << ", " << B.name(r.restriction) << ")\n";
    };
    for (auto const& r : C.rows()) {
      row(r);
    }
    for (auto const& r : C.extra_rows()) {
      row(r);
    }
    os << "\n[regular]\nR =";
    bool any = false;
    for (int v = 0; v < B.object_count(); ++v) {
      if (doc.R[v]) {
        os << " " << B.object_name(v);
        any = true;
      }
    }
    os << (any ? "\n" : " empty\n");
    if (!doc.params.empty()) {
      os << "\n[params]\n";
      for (auto const& [k, v] : doc.params) {
        os << k << " = " << v << "\n";
      }
    }
    for (auto const& A : doc.actions) {
      os << "\n[action " << A.name << "]\n";
      for (std::size_t y = 0; y < A.size(); ++y) {
        os << "point " << A.points[y] << " : " << B.object_name(A.fiber[y])
           << "\n";
      }
      for (auto const& [k, z] : A.gact) {
        os << "act " << B.name(k.first) << " " << A.points[k.second] << " = "
           << A.points[z] << "\n";
      }
      for (int e = 0; e < C.edge_count(); ++e) {
        for (auto const& [y, z] : A.mu[e]) {
          os << "mu " << C.edge(e).name << " " << A.points[y] << " = "
             << A.points[z] << "\n";
        }
      }
    }
    return os.str();
  }

}  // namespace gcorr
