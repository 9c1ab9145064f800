#pragma once

// Finite discrete groupoids given by explicit tables.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gcorr/error.hpp"
#include "gcorr/report.hpp"

namespace gcorr {

  class FiniteGroupoid {
   public:
    struct ArrowRec {
      std::string id;
      int         src;
      int         rng;
    };

    FiniteGroupoid() = default;

    // Builds the table skeleton.  Names are checked for duplicates and
    // dangling references (input_error); the axioms are left to validate().
    FiniteGroupoid(std::vector<std::string>                        objects,
                   std::vector<std::pair<std::string, std::pair<std::string,
                                                                std::string>>>
                       arrows)  // id -> (src, rng)
        : _objects(std::move(objects)) {
      for (std::size_t i = 0; i < _objects.size(); ++i) {
        if (!_object_index.emplace(_objects[i], static_cast<int>(i)).second) {
          throw input_error("duplicate object identifier '" + _objects[i]
                            + "'");
        }
      }
      for (auto const& [id, sr] : arrows) {
        ArrowRec a{id, object_index(sr.first), object_index(sr.second)};
        if (!_arrow_index.emplace(id, static_cast<int>(_arrows.size()))
                 .second) {
          throw input_error("duplicate arrow identifier '" + id + "'");
        }
        _arrows.push_back(std::move(a));
      }
      _compose.assign(_arrows.size(), std::vector<int>(_arrows.size(), -1));
      _inv.assign(_arrows.size(), -1);
      _unit.assign(_objects.size(), -1);
    }

    // compose(g, h) is g∘h (h first).
    void set_compose(int g, int h, int gh) {
      _compose.at(g).at(h) = gh;
    }
    void set_inverse(int g, int gi) {
      _inv.at(g) = gi;
    }
    void set_unit(int v, int u) {
      _unit.at(v) = u;
    }

    [[nodiscard]] std::size_t object_count() const noexcept {
      return _objects.size();
    }
    [[nodiscard]] std::size_t arrow_count() const noexcept {
      return _arrows.size();
    }
    [[nodiscard]] std::vector<std::string> const& objects() const noexcept {
      return _objects;
    }
    [[nodiscard]] std::vector<ArrowRec> const& arrows() const noexcept {
      return _arrows;
    }
    [[nodiscard]] ArrowRec const& arrow(int g) const {
      return _arrows.at(g);
    }
    [[nodiscard]] int src(int g) const {
      return _arrows.at(g).src;
    }
    [[nodiscard]] int rng(int g) const {
      return _arrows.at(g).rng;
    }
    // -1 when missing / not composable.
    [[nodiscard]] int compose(int g, int h) const {
      return _compose.at(g).at(h);
    }
    [[nodiscard]] int inverse(int g) const {
      return _inv.at(g);
    }
    [[nodiscard]] int unit(int v) const {
      return _unit.at(v);
    }

    [[nodiscard]] int object_index(std::string const& name) const {
      auto it = _object_index.find(name);
      if (it == _object_index.end()) {
        throw input_error("unknown object '" + name + "'");
      }
      return it->second;
    }
    [[nodiscard]] int arrow_index(std::string const& name) const {
      auto it = _arrow_index.find(name);
      if (it == _arrow_index.end()) {
        throw input_error("unknown arrow '" + name + "'");
      }
      return it->second;
    }
    [[nodiscard]] bool has_arrow(std::string const& name) const {
      return _arrow_index.count(name) != 0;
    }
    [[nodiscard]] bool has_object(std::string const& name) const {
      return _object_index.count(name) != 0;
    }

    [[nodiscard]] bool only_units() const {
      for (std::size_t g = 0; g < _arrows.size(); ++g) {
        if (_arrows[g].src != _arrows[g].rng) {
          return false;
        }
        if (_unit[_arrows[g].src] != static_cast<int>(g)) {
          return false;
        }
      }
      return true;
    }

    bool operator==(FiniteGroupoid const& that) const {
      return _objects == that._objects && _compose == that._compose
             && _inv == that._inv && _unit == that._unit
             && arrow_names() == that.arrow_names();
    }

   private:
    [[nodiscard]] std::vector<std::string> arrow_names() const {
      std::vector<std::string> out;
      for (auto const& a : _arrows) {
        out.push_back(a.id + "/" + std::to_string(a.src) + "/"
                      + std::to_string(a.rng));
      }
      return out;
    }

    std::vector<std::string>      _objects;
    std::map<std::string, int>    _object_index;
    std::vector<ArrowRec>         _arrows;
    std::map<std::string, int>    _arrow_index;
    std::vector<std::vector<int>> _compose;
    std::vector<int>              _inv;
    std::vector<int>              _unit;
  };

  // Exhaustive axiom check.  Never throws.
  inline Report validate(FiniteGroupoid const& G) {
    Report     rep("groupoid");
    auto const n   = static_cast<int>(G.arrow_count());
    auto const nob = static_cast<int>(G.object_count());
    auto       nm  = [&](int g) { return G.arrow(g).id; };
    auto       tri = [&](int a, int b, int c) {
      return "(" + nm(a) + ", " + nm(b) + ", " + nm(c) + ")";
    };

    for (int g = 0; g < n; ++g) {
      for (int h = 0; h < n; ++h) {
        int  gh         = G.compose(g, h);
        bool composable = G.src(g) == G.rng(h);
        if (composable && gh < 0) {
          rep.fail("composition",
                   "composable pair has no product",
                   "(" + nm(g) + ", " + nm(h) + ")");
        } else if (!composable && gh >= 0) {
          rep.fail("composition",
                   "product defined on a non-composable pair",
                   "(" + nm(g) + ", " + nm(h) + ")");
        } else if (gh >= 0
                   && (G.src(gh) != G.src(h) || G.rng(gh) != G.rng(g))) {
          rep.fail("composition",
                   "product has wrong source or range",
                   "(" + nm(g) + ", " + nm(h) + ") -> " + nm(gh));
        }
      }
    }

    std::size_t triples = 0;
    for (int f = 0; f < n; ++f) {
      for (int g = 0; g < n; ++g) {
        int fg = G.compose(f, g);
        if (fg < 0) {
          continue;
        }
        for (int h = 0; h < n; ++h) {
          int gh = G.compose(g, h);
          if (gh < 0) {
            continue;
          }
          ++triples;
          int l = G.compose(fg, h);
          int r = G.compose(f, gh);
          if (l != r || l < 0) {
            rep.fail("associativity", "(fg)h != f(gh)", tri(f, g, h));
          }
        }
      }
    }
    rep.fact("associativity_triples", triples);

    for (int v = 0; v < nob; ++v) {
      int u = G.unit(v);
      if (u < 0) {
        rep.fail("unit", "missing unit entry", G.objects()[v]);
        continue;
      }
      if (G.src(u) != v || G.rng(u) != v) {
        rep.fail("unit", "unit has wrong source or range", G.objects()[v]);
        continue;
      }
      for (int g = 0; g < n; ++g) {
        if (G.rng(g) == v && G.compose(u, g) != g) {
          rep.fail("unit", "unit is not left neutral",
                   "(" + nm(u) + ", " + nm(g) + ")");
        }
        if (G.src(g) == v && G.compose(g, u) != g) {
          rep.fail("unit", "unit is not right neutral",
                   "(" + nm(g) + ", " + nm(u) + ")");
        }
      }
    }

    for (int g = 0; g < n; ++g) {
      int gi = G.inverse(g);
      if (gi < 0) {
        rep.fail("inverse", "missing inverse entry", nm(g));
        continue;
      }
      int us = G.unit(G.src(g));
      int ur = G.unit(G.rng(g));
      if (G.compose(gi, g) != us || us < 0) {
        rep.fail("inverse", "inv(g)g is not the source unit", nm(g));
      }
      if (G.compose(g, gi) != ur || ur < 0) {
        rep.fail("inverse", "g inv(g) is not the range unit", nm(g));
      }
    }
    rep.fact("objects", G.object_count());
    rep.fact("arrows", G.arrow_count());
    return rep;
  }

  inline FiniteGroupoid makeSetGroupoid(std::vector<std::string> const& V) {
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
        arrows;
    for (auto const& v : V) {
      arrows.push_back({"1_" + v, {v, v}});
    }
    FiniteGroupoid G(V, arrows);
    for (int i = 0; i < static_cast<int>(V.size()); ++i) {
      G.set_compose(i, i, i);
      G.set_inverse(i, i);
      G.set_unit(i, i);
    }
    return G;
  }

  // mul[i][j] names the product elements[i]·elements[j].  Throws input_error
  // naming the failed group axiom.
  inline FiniteGroupoid
  makeGroupGroupoid(std::vector<std::string> const&              elements,
                    std::vector<std::vector<std::string>> const& mul,
                    std::string const&                           object = "*") {
    auto const n = elements.size();
    if (n == 0) {
      throw input_error("identity axiom: a group has at least one element");
    }
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (!idx.emplace(elements[i], static_cast<int>(i)).second) {
        throw input_error("duplicate group element '" + elements[i] + "'");
      }
    }
    if (mul.size() != n) {
      throw input_error("closure axiom: table has wrong number of rows");
    }
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (mul[i].size() != n) {
        throw input_error("closure axiom: row " + elements[i]
                          + " has wrong length");
      }
      for (std::size_t j = 0; j < n; ++j) {
        auto it = idx.find(mul[i][j]);
        if (it == idx.end()) {
          throw input_error("closure axiom: " + elements[i] + "*"
                            + elements[j] + " = '" + mul[i][j]
                            + "' is not an element");
        }
        t[i][j] = it->second;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (t[t[a][b]][c] != t[a][t[b][c]]) {
            throw input_error("associativity axiom fails at (" + elements[a]
                              + ", " + elements[b] + ", " + elements[c]
                              + ")");
          }
        }
      }
    }
    int e = -1;
    for (std::size_t a = 0; a < n && e < 0; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) {
        ok = t[a][b] == static_cast<int>(b) && t[b][a] == static_cast<int>(b);
      }
      if (ok) {
        e = static_cast<int>(a);
      }
    }
    if (e < 0) {
      throw input_error("identity axiom: no two-sided identity");
    }
    std::vector<int> inv(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (t[a][b] == e && t[b][a] == e) {
          inv[a] = static_cast<int>(b);
          break;
        }
      }
      if (inv[a] < 0) {
        throw input_error("inverse axiom: " + elements[a]
                          + " has no inverse");
      }
    }
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
        arrows;
    for (auto const& g : elements) {
      arrows.push_back({g, {object, object}});
    }
    FiniteGroupoid G({object}, arrows);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        G.set_compose(static_cast<int>(a), static_cast<int>(b), t[a][b]);
      }
      G.set_inverse(static_cast<int>(a), inv[a]);
    }
    G.set_unit(0, e);
    return G;
  }

}  // namespace gcorr
