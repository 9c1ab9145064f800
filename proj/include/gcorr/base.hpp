#pragma once

// The base groupoid G seen uniformly: either a FiniteGroupoid or a finitely
// generated group given by generators and a normalization routine (free
// reduction, optionally followed by abelianization).  Presented groups have
// a single object.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gcorr/error.hpp"
#include "gcorr/groupoid.hpp"

namespace gcorr {

  // For a finite groupoid: {arrow index}.  For a presented group: the normal
  // form word, letter +(i+1) for generator i and -(i+1) for its inverse; the
  // empty word is the identity.
  struct Arrow {
    std::vector<int32_t> code;

    bool operator==(Arrow const&) const = default;
    bool operator<(Arrow const& that) const {
      if (code.size() != that.code.size()) {
        return code.size() < that.code.size();
      }
      return code < that.code;
    }
  };

  struct PresentedGroup {
    std::vector<std::string> generators;
    std::string              object   = "*";
    std::string              identity = "e";
    bool                     abelian  = false;

    [[nodiscard]] std::vector<int32_t> normalize(std::vector<int32_t> w) const {
      std::vector<int32_t> out;
      for (auto l : w) {
        if (!out.empty() && out.back() == -l) {
          out.pop_back();
        } else {
          out.push_back(l);
        }
      }
      if (!abelian) {
        return out;
      }
      // exponent vector, written generator by generator
      std::vector<int64_t> exps(generators.size(), 0);
      for (auto l : out) {
        exps[std::abs(l) - 1] += l > 0 ? 1 : -1;
      }
      out.clear();
      for (std::size_t i = 0; i < exps.size(); ++i) {
        auto l = static_cast<int32_t>(i + 1);
        for (int64_t k = 0; k < std::abs(exps[i]); ++k) {
          out.push_back(exps[i] > 0 ? l : -l);
        }
      }
      return out;
    }
  };

  class Base {
   public:
    Base() : _impl(FiniteGroupoid()) {}
    explicit Base(FiniteGroupoid G) : _impl(std::move(G)) {}
    explicit Base(PresentedGroup P) : _impl(std::move(P)) {
      auto const& gens = std::get<PresentedGroup>(_impl).generators;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].empty() || gens[i] == presented().identity) {
          throw input_error("bad generator name '" + gens[i] + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (gens[i] == gens[j]) {
            throw input_error("duplicate generator '" + gens[i] + "'");
          }
        }
      }
    }

    [[nodiscard]] bool is_presented() const noexcept {
      return std::holds_alternative<PresentedGroup>(_impl);
    }
    [[nodiscard]] FiniteGroupoid const& finite() const {
      return std::get<FiniteGroupoid>(_impl);
    }
    [[nodiscard]] PresentedGroup const& presented() const {
      return std::get<PresentedGroup>(_impl);
    }

    [[nodiscard]] int object_count() const {
      return is_presented() ? 1 : static_cast<int>(finite().object_count());
    }
    [[nodiscard]] std::string const& object_name(int v) const {
      return is_presented() ? presented().object : finite().objects().at(v);
    }
    [[nodiscard]] int object_index(std::string const& name) const {
      if (is_presented()) {
        if (name != presented().object) {
          throw input_error("unknown object '" + name + "'");
        }
        return 0;
      }
      return finite().object_index(name);
    }
    [[nodiscard]] bool has_object(std::string const& name) const {
      return is_presented() ? name == presented().object
                            : finite().has_object(name);
    }

    [[nodiscard]] int src(Arrow const& a) const {
      return is_presented() ? 0 : finite().src(a.code.at(0));
    }
    [[nodiscard]] int rng(Arrow const& a) const {
      return is_presented() ? 0 : finite().rng(a.code.at(0));
    }

    [[nodiscard]] Arrow unit(int v) const {
      if (is_presented()) {
        return Arrow{};
      }
      int u = finite().unit(v);
      if (u < 0) {
        throw precondition_error("no unit recorded for object "
                                 + object_name(v));
      }
      return Arrow{{u}};
    }

    [[nodiscard]] bool is_unit(Arrow const& a) const {
      if (is_presented()) {
        return a.code.empty();
      }
      return finite().unit(finite().src(a.code.at(0))) == a.code[0];
    }

    // a∘b, defined iff src(a) = rng(b).
    [[nodiscard]] std::optional<Arrow> compose(Arrow const& a,
                                               Arrow const& b) const {
      if (is_presented()) {
        std::vector<int32_t> w = a.code;
        w.insert(w.end(), b.code.begin(), b.code.end());
        return Arrow{presented().normalize(std::move(w))};
      }
      int ab = finite().compose(a.code.at(0), b.code.at(0));
      if (ab < 0) {
        return std::nullopt;
      }
      return Arrow{{ab}};
    }

    // compose() for callers that have already checked composability.
    [[nodiscard]] Arrow mul(Arrow const& a, Arrow const& b) const {
      auto ab = compose(a, b);
      if (!ab) {
        throw precondition_error("arrows " + name(a) + " and " + name(b)
                                 + " are not composable");
      }
      return *ab;
    }

    [[nodiscard]] Arrow inverse(Arrow const& a) const {
      if (is_presented()) {
        std::vector<int32_t> w(a.code.rbegin(), a.code.rend());
        for (auto& l : w) {
          l = -l;
        }
        return Arrow{presented().normalize(std::move(w))};
      }
      int gi = finite().inverse(a.code.at(0));
      if (gi < 0) {
        throw precondition_error("no inverse recorded for " + name(a));
      }
      return Arrow{{gi}};
    }

    [[nodiscard]] std::size_t word_length(Arrow const& a) const {
      return is_presented() ? a.code.size() : 0;
    }

    [[nodiscard]] Arrow letter(int32_t l) const {
      return Arrow{{l}};
    }

    // Words are written generator powers joined by '.', e.g. "z^2.w^-1".
    [[nodiscard]] std::string name(Arrow const& a) const {
      if (!is_presented()) {
        return finite().arrow(a.code.at(0)).id;
      }
      auto const& P = presented();
      if (a.code.empty()) {
        return P.identity;
      }
      std::string out;
      for (std::size_t i = 0; i < a.code.size();) {
        std::size_t j = i;
        while (j < a.code.size() && a.code[j] == a.code[i]) {
          ++j;
        }
        if (!out.empty()) {
          out += '.';
        }
        out += P.generators[std::abs(a.code[i]) - 1];
        auto k = static_cast<long>(j - i) * (a.code[i] > 0 ? 1 : -1);
        if (k != 1) {
          out += "^" + std::to_string(k);
        }
        i = j;
      }
      return out;
    }

    [[nodiscard]] Arrow parse(std::string const& s) const {
      if (!is_presented()) {
        return Arrow{{finite().arrow_index(s)}};
      }
      auto const& P = presented();
      if (s == P.identity) {
        return Arrow{};
      }
      std::vector<int32_t> w;
      auto gen_index = [&](std::string const& g) -> int32_t {
        for (std::size_t i = 0; i < P.generators.size(); ++i) {
          if (P.generators[i] == g) {
            return static_cast<int32_t>(i + 1);
          }
        }
        return 0;
      };
      std::size_t pos = 0;
      while (pos <= s.size()) {
        auto        dot    = s.find('.', pos);
        std::string factor = s.substr(
            pos, dot == std::string::npos ? std::string::npos : dot - pos);
        pos = dot == std::string::npos ? s.size() + 1 : dot + 1;
        if (factor.empty()) {
          throw input_error("empty factor in group word '" + s + "'");
        }
        long        k     = 1;
        std::string gname = factor;
        auto        caret = factor.find('^');
        if (caret != std::string::npos) {
          gname = factor.substr(0, caret);
          try {
            std::size_t used = 0;
            k = std::stol(factor.substr(caret + 1), &used);
            if (used != factor.size() - caret - 1) {
              throw input_error("");
            }
          } catch (...) {
            throw input_error("bad exponent in group word '" + s + "'");
          }
        }
        int32_t g = gen_index(gname);
        if (g == 0) {
          // concatenated single-character generators, e.g. "zz"
          if (caret == std::string::npos && gname.size() > 1) {
            for (char c : gname) {
              int32_t gc = gen_index(std::string(1, c));
              if (gc == 0) {
                throw input_error("unknown generator in '" + s + "'");
              }
              w.push_back(gc);
            }
            continue;
          }
          if (gname == P.identity) {
            continue;
          }
          throw input_error("unknown generator '" + gname + "' in '" + s
                            + "'");
        }
        for (long i = 0; i < std::labs(k); ++i) {
          w.push_back(k > 0 ? g : -g);
        }
      }
      return Arrow{P.normalize(std::move(w))};
    }

    // All arrows of a finite groupoid; normal forms of word length <= cap
    // for a presented group (abelian mode: all exponent vectors of total
    // length <= cap).
    [[nodiscard]] std::vector<Arrow> arrows_up_to(std::size_t cap) const {
      std::vector<Arrow> out;
      if (!is_presented()) {
        for (std::size_t g = 0; g < finite().arrow_count(); ++g) {
          out.push_back(Arrow{{static_cast<int32_t>(g)}});
        }
        return out;
      }
      auto const& P = presented();
      auto        k = static_cast<int32_t>(P.generators.size());
      std::vector<std::vector<int32_t>> frontier{{}};
      std::map<std::vector<int32_t>, bool> seen{{{}, true}};
      out.push_back(Arrow{});
      for (std::size_t len = 1; len <= cap; ++len) {
        std::vector<std::vector<int32_t>> next;
        for (auto const& w : frontier) {
          for (int32_t l = -k; l <= k; ++l) {
            if (l == 0) {
              continue;
            }
            auto v = w;
            v.push_back(l);
            v = P.normalize(std::move(v));
            if (v.size() == len && seen.emplace(v, true).second) {
              next.push_back(v);
            }
          }
        }
        std::sort(next.begin(), next.end());
        for (auto const& w : next) {
          out.push_back(Arrow{w});
        }
        frontier = std::move(next);
      }
      return out;
    }

    // Generators as arrows: all arrows for a finite groupoid, the letters
    // for a presented group.
    [[nodiscard]] std::vector<Arrow> generators() const {
      if (!is_presented()) {
        return arrows_up_to(0);
      }
      std::vector<Arrow> out;
      for (std::size_t i = 0; i < presented().generators.size(); ++i) {
        out.push_back(Arrow{{static_cast<int32_t>(i + 1)}});
      }
      return out;
    }

    // Only units (the graph case).
    [[nodiscard]] bool trivial() const {
      return is_presented() ? presented().generators.empty()
                            : finite().only_units();
    }

   private:
    std::variant<FiniteGroupoid, PresentedGroup> _impl;
  };

}  // namespace gcorr
