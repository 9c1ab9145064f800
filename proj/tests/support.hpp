#pragma once

// Shared helpers for the test binaries: fixture loading, small builders and
// oracles that do not go through the library code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gcorr/gcorr.hpp"

namespace gtest {

  inline gcorr::Document fixture(std::string const& name) {
    return gcorr::load_document(std::string(GCORR_INSTANCES) + "/" + name
                                + ".gcd");
  }

  // Z/n as a one-object groupoid; element i is "g<i>", 0 is the identity.
  inline gcorr::FiniteGroupoid cyclic(int n) {
    std::vector<std::string>              els;
    std::vector<std::vector<std::string>> mul(n);
    for (int i = 0; i < n; ++i) {
      els.push_back("g" + std::to_string(i));
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        mul[i].push_back(els[(i + j) % n]);
      }
    }
    return gcorr::makeGroupGroupoid(els, mul);
  }

  // S_3 as permutations of {0,1,2}; composition (p∘q)(i) = p(q(i)).
  inline gcorr::FiniteGroupoid symmetric3() {
    std::vector<std::vector<int>> perms;
    std::vector<int>              p{0, 1, 2};
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    auto name = [](std::vector<int> const& q) {
      return "s" + std::to_string(q[0]) + std::to_string(q[1])
             + std::to_string(q[2]);
    };
    std::vector<std::string>              els;
    std::vector<std::vector<std::string>> mul;
    for (auto const& a : perms) {
      els.push_back(name(a));
    }
    for (auto const& a : perms) {
      mul.emplace_back();
      for (auto const& b : perms) {
        std::vector<int> c{a[b[0]], a[b[1]], a[b[2]]};
        mul.back().push_back(name(c));
      }
    }
    return gcorr::makeGroupGroupoid(els, mul);
  }

  // Pair groupoid on k objects times Z/m: arrows (i, j, g) : i <- j.
  inline gcorr::FiniteGroupoid pair_times_cyclic(int k, int m) {
    std::vector<std::string> objs;
    for (int i = 0; i < k; ++i) {
      objs.push_back("o" + std::to_string(i));
    }
    std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
        arrows;
    auto id = [&](int i, int j, int g) {
      return (i * k + j) * m + g;
    };
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        for (int g = 0; g < m; ++g) {
          arrows.push_back({"a" + std::to_string(i) + std::to_string(j) + "_"
                                + std::to_string(g),
                            {objs[j], objs[i]}});
        }
      }
    }
    gcorr::FiniteGroupoid G(objs, arrows);
    for (int i = 0; i < k; ++i) {
      G.set_unit(i, id(i, i, 0));
      for (int j = 0; j < k; ++j) {
        for (int g = 0; g < m; ++g) {
          G.set_inverse(id(i, j, g), id(j, i, (m - g) % m));
          for (int l = 0; l < k; ++l) {
            for (int h = 0; h < m; ++h) {
              G.set_compose(id(i, j, g), id(j, l, h), id(i, l, (g + h) % m));
            }
          }
        }
      }
    }
    return G;
  }

  // Composable edge sequences of length n by depth-first extension from the
  // raw edge list.
  inline std::set<std::vector<int>> brute_paths(gcorr::Correspondence const& C,
                                                std::size_t n) {
    std::set<std::vector<int>> out;
    std::vector<int>           cur;
    std::function<void()>      go = [&] {
      if (cur.size() == n) {
        out.insert(cur);
        return;
      }
      for (int e = 0; e < C.edge_count(); ++e) {
        if (cur.empty() || C.edge(cur.back()).src == C.edge(e).rng) {
          cur.push_back(e);
          go();
          cur.pop_back();
        }
      }
    };
    if (n > 0) {
      go();
    }
    return out;
  }

  // Copy of C with every cocycle row passed through `edit`; rows for which
  // it returns false are dropped.
  inline gcorr::Correspondence rebuild(
      gcorr::Correspondence const&                                  C,
      std::function<bool(gcorr::Correspondence::CocycleRow&)> const& edit) {
    gcorr::Correspondence out(C.base(), C.edges());
    for (auto const* rows : {&C.rows(), &C.extra_rows()}) {
      for (auto r : *rows) {
        if (edit(r)) {
          out.set_row(r.g, r.x, r.gx, r.restriction);
        }
      }
    }
    return out;
  }

  // The odometer read as little-endian binary: z^k adds k modulo 2^n and
  // the restriction is z to the carry.  Returns (digits, carry).
  inline std::pair<std::vector<int>, long> odometer_add(std::vector<int> digits,
                                                        long             k) {
    long n   = static_cast<long>(digits.size());
    long val = 0;
    for (long i = n - 1; i >= 0; --i) {
      val = 2 * val + digits[i];
    }
    long mod   = 1L << n;
    long sum   = val + k;
    long carry = sum >= 0 ? sum / mod : -((-sum + mod - 1) / mod);
    long rem   = sum - carry * mod;
    for (long i = 0; i < n; ++i) {
      digits[i] = static_cast<int>(rem % 2);
      rem /= 2;
    }
    return {digits, carry};
  }

}  // namespace gtest
