#pragma once

// The inverse semigroup I(G,X) generated by singleton slices, in the normal
// form (p, g, q) ~ Θ(p)Θ(g)Θ(q)^*, plus Zero and the formal unit One.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gcorr/correspondence.hpp"
#include "gcorr/error.hpp"

namespace gcorr {

  struct ISElement {
    enum class Kind { Zero, One, Triple };

    Kind  kind = Kind::Zero;
    Path  p;
    Arrow g;
    Path  q;

    static ISElement zero() {
      return ISElement{};
    }
    static ISElement one() {
      ISElement s;
      s.kind = Kind::One;
      return s;
    }
    // src(p) = rng(g), src(q) = src(g).
    static ISElement triple(Correspondence const& C, Path p, Arrow g,
                            Path q) {
      auto const& B = C.base();
      if (p.source != B.rng(g) || q.source != B.src(g)) {
        throw precondition_error("ISElement: need src(p)=rng(g) and "
                                 "src(q)=src(g)");
      }
      ISElement s;
      s.kind = Kind::Triple;
      s.p    = std::move(p);
      s.g    = std::move(g);
      s.q    = std::move(q);
      return s;
    }

    [[nodiscard]] bool is_zero() const noexcept {
      return kind == Kind::Zero;
    }
    [[nodiscard]] bool is_one() const noexcept {
      return kind == Kind::One;
    }
    [[nodiscard]] bool is_triple() const noexcept {
      return kind == Kind::Triple;
    }

    bool operator==(ISElement const& that) const {
      if (kind != that.kind) {
        return false;
      }
      return kind != Kind::Triple
             || (p == that.p && g == that.g && q == that.q);
    }
    bool operator<(ISElement const& that) const {
      if (kind != that.kind) {
        return kind < that.kind;
      }
      if (kind != Kind::Triple) {
        return false;
      }
      return std::tie(p, g, q) < std::tie(that.p, that.g, that.q);
    }
  };

  // Generators Θ(x) and Θ(g) as elements.
  inline ISElement theta_edge(Correspondence const& C, int x) {
    int  s = C.edge(x).src;
    Path p = C.make_path({x});
    return ISElement::triple(C, p, C.base().unit(s), Path{s, s, {}});
  }
  inline ISElement theta_arrow(Correspondence const& C, Arrow const& g) {
    auto const& B = C.base();
    int         r = B.rng(g), s = B.src(g);
    return ISElement::triple(C, Path{r, r, {}}, g, Path{s, s, {}});
  }

  inline ISElement isgMultiply(Correspondence const& C, ISElement const& s,
                               ISElement const& t) {
    if (s.is_zero() || t.is_zero()) {
      return ISElement::zero();
    }
    if (s.is_one()) {
      return t;
    }
    if (t.is_one()) {
      return s;
    }
    auto const& B = C.base();
    if (is_prefix(s.q, t.p)) {
      // t.p = s.q ⌢ u
      Path u   = strip_prefix(s.q, t.p);
      auto act = C.try_act(s.g, u);
      if (!act) {
        return ISElement::zero();
      }
      auto g = B.compose(act->second, t.g);
      if (!g) {
        return ISElement::zero();
      }
      return ISElement::triple(C, C.concat(s.p, act->first), *g, t.q);
    }
    if (is_prefix(t.p, s.q)) {
      // s.q = t.p ⌢ u with u nonempty
      Path  u    = strip_prefix(t.p, s.q);
      Arrow ginv = B.inverse(t.g);
      auto  act  = C.try_act(ginv, u);
      if (!act) {
        return ISElement::zero();
      }
      auto g = B.compose(s.g, B.inverse(act->second));
      if (!g) {
        return ISElement::zero();
      }
      return ISElement::triple(C, s.p, *g, C.concat(t.q, act->first));
    }
    return ISElement::zero();
  }

  inline ISElement isgAdjoint(Correspondence const& C, ISElement const& s) {
    if (!s.is_triple()) {
      return s;
    }
    return ISElement::triple(C, s.q, C.base().inverse(s.g), s.p);
  }

  inline bool isgIsIdempotent(Correspondence const& C, ISElement const& s) {
    if (!s.is_triple()) {
      return true;
    }
    return s.p == s.q && C.base().is_unit(s.g);
  }

  // s ≤ t iff s = t·(s^* s).
  inline bool isgLeq(Correspondence const& C, ISElement const& s,
                     ISElement const& t) {
    return isgMultiply(C, t, isgMultiply(C, isgAdjoint(C, s), s)) == s;
  }

  // θ_s on exact finite paths (points of Ω_{[0,∞)}): q⌢t ↦ p⌢(g∘t).
  inline std::optional<Path> theta_exact(Correspondence const& C,
                                         ISElement const& s, Path const& w) {
    if (s.is_zero()) {
      return std::nullopt;
    }
    if (s.is_one()) {
      return w;
    }
    if (!is_prefix(s.q, w)) {
      return std::nullopt;
    }
    auto act = C.try_act(s.g, strip_prefix(s.q, w));
    if (!act) {
      return std::nullopt;
    }
    return C.concat(s.p, act->first);
  }

  // All triples (p, g, q) with |p|, |q| <= cap and g of word length
  // <= wordcap, in sorted order.
  inline std::vector<ISElement> bounded_elements(Correspondence const& C,
                                                 std::size_t           cap,
                                                 std::size_t wordcap) {
    auto const&       B = C.base();
    std::vector<Path> paths;
    for (std::size_t k = 0; k <= cap; ++k) {
      auto l = C.pathsOfLength(k);
      paths.insert(paths.end(), l.begin(), l.end());
    }
    std::vector<ISElement> out;
    for (auto const& g : B.arrows_up_to(wordcap)) {
      for (auto const& p : paths) {
        if (p.source != B.rng(g)) {
          continue;
        }
        for (auto const& q : paths) {
          if (q.source == B.src(g)) {
            out.push_back(ISElement::triple(C, p, g, q));
          }
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text syntax: "p * g * q^", "0", "1"
  ////////////////////////////////////////////////////////////////////////

  inline std::string element_name(Correspondence const& C,
                                  ISElement const&      s) {
    if (s.is_zero()) {
      return "0";
    }
    if (s.is_one()) {
      return "1";
    }
    return C.path_name(s.p) + " * " + C.base().name(s.g) + " * "
           + C.path_name(s.q) + "^";
  }

  namespace detail {
    inline std::string trim(std::string const& s) {
      auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) {
        return "";
      }
      auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    }
  }  // namespace detail

  inline ISElement parse_element(Correspondence const& C,
                                 std::string const&    text) {
    auto s = detail::trim(text);
    if (s == "0") {
      return ISElement::zero();
    }
    if (s == "1") {
      return ISElement::one();
    }
    std::vector<std::string> parts;
    std::size_t              pos = 0;
    while (true) {
      auto star = s.find('*', pos);
      parts.push_back(detail::trim(s.substr(pos, star == std::string::npos
                                                     ? std::string::npos
                                                     : star - pos)));
      if (star == std::string::npos) {
        break;
      }
      pos = star + 1;
    }
    if (parts.size() != 3 || parts[2].empty() || parts[2].back() != '^') {
      throw input_error("element '" + text + "' is not of the form p * g * q^");
    }
    parts[2].pop_back();
    auto const& B = C.base();
    Arrow       g = B.parse(parts[1]);
    auto        path_at = [&](std::string const& tok, int vertex) {
      if (tok.empty()) {
        return Path{vertex, vertex, {}};
      }
      return C.parse_path(tok);
    };
    Path p = path_at(parts[0], B.rng(g));
    Path q = path_at(parts[2], B.src(g));
    try {
      return ISElement::triple(C, p, g, q);
    } catch (precondition_error const& e) {
      throw input_error("element '" + text + "': " + e.what());
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Free-reduction oracle
  ////////////////////////////////////////////////////////////////////////

  // Generator letters: Θ(x), Θ(x)^*, Θ(g).  Θ(g)^* is written Θ(g^{-1}).
  struct Letter {
    enum class Kind { E, Estar, G };
    Kind  kind = Kind::E;
    int   edge = -1;
    Arrow g;

    bool operator==(Letter const&) const = default;
  };

  inline std::string letter_name(Correspondence const& C, Letter const& l) {
    switch (l.kind) {
      case Letter::Kind::E:
        return C.edge(l.edge).name;
      case Letter::Kind::Estar:
        return C.edge(l.edge).name + "^";
      default:
        return "@" + C.base().name(l.g);
    }
  }

  // Tokens: "x", "x^", "@g" (whitespace separated).
  inline std::vector<Letter> parse_word(Correspondence const& C,
                                        std::string const&    text) {
    std::vector<Letter> out;
    std::size_t         pos = 0;
    while (pos < text.size()) {
      auto b = text.find_first_not_of(" \t", pos);
      if (b == std::string::npos) {
        break;
      }
      auto e   = text.find_first_of(" \t", b);
      auto tok = text.substr(b, e == std::string::npos ? std::string::npos
                                                       : e - b);
      pos      = e == std::string::npos ? text.size() : e;
      if (tok[0] == '@') {
        out.push_back({Letter::Kind::G, -1, C.base().parse(tok.substr(1))});
      } else if (tok.back() == '^') {
        out.push_back(
            {Letter::Kind::Estar, C.edge_index(tok.substr(0, tok.size() - 1)),
             {}});
      } else {
        out.push_back({Letter::Kind::E, C.edge_index(tok), {}});
      }
    }
    return out;
  }

  struct Reduction {
    bool                zero = false;
    std::vector<Letter> word;  // irreducible word when !zero
  };

  // Rewrites adjacent pairs with the defining relations until none applies.
  // With `bracket` false the relation Θ(x)^*Θ(y) = Θ(<x|y>) is not used.
  inline Reduction free_reduce(Correspondence const& C,
                               std::vector<Letter>   w,
                               bool                  bracket = true) {
    using K       = Letter::Kind;
    auto const& B = C.base();
    auto src = [&](Letter const& l) {
      return l.kind == K::G ? B.src(l.g) : C.edge(l.edge).src;
    };
    auto rng = [&](Letter const& l) {
      return l.kind == K::G ? B.rng(l.g) : C.edge(l.edge).rng;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < w.size() && !changed; ++i) {
        Letter const a = w[i];
        Letter const b = w[i + 1];
        std::vector<Letter> repl;
        bool                rewrite = false;
        if (a.kind == K::E && b.kind == K::E) {
          if (src(a) != rng(b)) {
            return {true, {}};
          }
        } else if (a.kind == K::Estar && b.kind == K::Estar) {
          // (Θ(b)Θ(a))^*
          if (src(b) != rng(a)) {
            return {true, {}};
          }
        } else if (a.kind == K::E && b.kind == K::Estar) {
          if (src(a) != src(b)) {
            return {true, {}};
          }
        } else if (a.kind == K::E && b.kind == K::G) {
          if (src(a) != rng(b)) {
            return {true, {}};
          }
          if (B.is_unit(b.g)) {
            rewrite = true;
            repl    = {a};
          }
        } else if (a.kind == K::G && b.kind == K::Estar) {
          if (B.src(a.g) != src(b)) {
            return {true, {}};
          }
          if (B.is_unit(a.g)) {
            rewrite = true;
            repl    = {b};
          }
        } else if (a.kind == K::G && b.kind == K::G) {
          auto ab = B.compose(a.g, b.g);
          if (!ab) {
            return {true, {}};
          }
          rewrite = true;
          repl    = {{K::G, -1, *ab}};
        } else if (a.kind == K::G && b.kind == K::E) {
          // Θ(g)Θ(x) = Θ(g∘x)Θ(g|_x)
          if (B.src(a.g) != rng(b)) {
            return {true, {}};
          }
          auto r = C.act_edge(a.g, b.edge);
          if (!r) {
            return {true, {}};
          }
          rewrite = true;
          repl    = {{K::E, r->edge, {}}, {K::G, -1, r->restriction}};
        } else if (a.kind == K::Estar && b.kind == K::G) {
          // Θ(x)^*Θ(g) = (Θ(g^{-1})Θ(x))^*
          //            = Θ((g^{-1}|_x)^{-1}) Θ(g^{-1}∘x)^*
          if (B.rng(b.g) != rng(a)) {
            return {true, {}};
          }
          auto r = C.act_edge(B.inverse(b.g), a.edge);
          if (!r) {
            return {true, {}};
          }
          rewrite = true;
          repl    = {{K::G, -1, B.inverse(r->restriction)},
                     {K::Estar, r->edge, {}}};
        } else if (a.kind == K::Estar && b.kind == K::E) {
          if (bracket) {
            if (a.edge != b.edge) {
              return {true, {}};
            }
            rewrite = true;
            repl    = {{K::G, -1, B.unit(src(a))}};
          }
        }
        if (rewrite) {
          w.erase(w.begin() + long(i), w.begin() + long(i) + 2);
          w.insert(w.begin() + long(i), repl.begin(), repl.end());
          changed = true;
        }
      }
    }
    return {false, std::move(w)};
  }

  // Normal form of a fully reduced word (bracket relation used).
  inline ISElement isgFreeReduceOracle(Correspondence const&      C,
                                       std::vector<Letter> const& word) {
    if (word.empty()) {
      return ISElement::one();
    }
    auto red = free_reduce(C, word, true);
    if (red.zero) {
      return ISElement::zero();
    }
    using K       = Letter::Kind;
    auto const& B = C.base();
    std::vector<int>     pe, qe_rev;
    std::optional<Arrow> g;
    for (auto const& l : red.word) {
      if (l.kind == K::E) {
        if (g || !qe_rev.empty()) {
          throw precondition_error("oracle: word not in normal form");
        }
        pe.push_back(l.edge);
      } else if (l.kind == K::G) {
        if (g || !qe_rev.empty()) {
          throw precondition_error("oracle: word not in normal form");
        }
        g = l.g;
      } else {
        qe_rev.push_back(l.edge);
      }
    }
    std::vector<int> qe(qe_rev.rbegin(), qe_rev.rend());
    int              v;  // the common source of p and q
    if (g) {
      v = B.src(*g);
    } else if (!pe.empty()) {
      v = C.edge(pe.back()).src;
    } else {
      v = C.edge(qe.back()).src;
    }
    Arrow gg = g ? *g : B.unit(v);
    Path  p  = pe.empty() ? Path{B.rng(gg), B.rng(gg), {}} : C.make_path(pe);
    Path  q  = qe.empty() ? Path{v, v, {}} : C.make_path(qe);
    return ISElement::triple(C, p, gg, q);
  }

  // A word as a composite partial map on exact finite paths.
  inline std::optional<Path> apply_word(Correspondence const&      C,
                                        std::vector<Letter> const& w,
                                        Path                       pt) {
    using K       = Letter::Kind;
    auto const& B = C.base();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (it->kind == K::E) {
        if (pt.range != C.edge(it->edge).src) {
          return std::nullopt;
        }
        pt = C.concat(C.make_path({it->edge}), pt);
      } else if (it->kind == K::Estar) {
        if (pt.empty() || pt.edges[0] != it->edge) {
          return std::nullopt;
        }
        pt = strip_prefix(C.make_path({it->edge}), pt);
      } else {
        if (pt.range != B.src(it->g)) {
          return std::nullopt;
        }
        auto r = C.try_act(it->g, pt);
        if (!r) {
          return std::nullopt;
        }
        pt = r->first;
      }
    }
    return pt;
  }

}  // namespace gcorr
