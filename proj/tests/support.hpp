// Shared helpers for the test suites: seeded generators and independent
// oracles. Everything here is test-only and deliberately avoids the
// library's own algorithms wherever it serves as a cross-check.
#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "itl/formula.hpp"
#include "itl/model.hpp"

namespace itl::testing {

using Rng = std::mt19937_64;

// Three-world model separating intuitionistic from classical temporal
// satisfiability: w's successor v sits strictly below u, and only u
// carries p.
inline constexpr const char* kThreeWorldModel = R"(model
worlds w v u
order v u
succ w v
succ v v
succ u u
val u p
)";

// Three-world countermodel for ~~F G p -> F ~~G p on dynamic frames:
// a sits below two incomparable one-way branches.
inline constexpr const char* kBranchingCounterModel = R"(model
worlds a x y
order a x
order a y
succ a a
succ x y
succ y y
val y p
)";

inline int pick(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

/// Random formula with at most `max_nodes` AST nodes over the given atoms.
inline Formula random_formula(Rng& rng, int max_nodes,
                              const std::vector<std::string>& atoms) {
  if (max_nodes <= 1) {
    if (atoms.empty() || chance(rng, 0.15)) return Formula::falsum();
    return Formula::atom(atoms[static_cast<std::size_t>(
        pick(rng, 0, static_cast<int>(atoms.size()) - 1))]);
  }
  switch (pick(rng, 0, 7)) {
    case 0:
      return random_formula(rng, 1, atoms);
    case 1:
      return Formula::next(random_formula(rng, max_nodes - 1, atoms));
    case 2:
      return Formula::eventually(random_formula(rng, max_nodes - 1, atoms));
    case 3:
      return Formula::henceforth(random_formula(rng, max_nodes - 1, atoms));
    case 4:
      return Formula::negation(random_formula(rng, max_nodes - 2, atoms));
    default: {
      const int left = pick(rng, 1, std::max(1, max_nodes - 2));
      const int right = max_nodes - 1 - left;
      Formula a = random_formula(rng, left, atoms);
      Formula b = random_formula(rng, std::max(1, right), atoms);
      switch (pick(rng, 0, 2)) {
        case 0:
          return Formula::conj(std::move(a), std::move(b));
        case 1:
          return Formula::disj(std::move(a), std::move(b));
        default:
          return Formula::implies(std::move(a), std::move(b));
      }
    }
  }
}

/// Independent subformula enumeration: walks the tree and collects printed
/// forms of every subtree into a set.
inline std::set<std::string> subtree_prints(const Formula& f) {
  std::set<std::string> out;
  out.insert(f.to_string());
  switch (f.kind()) {
    case Connective::Atom:
    case Connective::Falsum:
      break;
    case Connective::Next:
    case Connective::Eventually:
    case Connective::Henceforth: {
      auto sub = subtree_prints(f.sub());
      out.insert(sub.begin(), sub.end());
      break;
    }
    default: {
      auto l = subtree_prints(f.lhs());
      auto r = subtree_prints(f.rhs());
      out.insert(l.begin(), l.end());
      out.insert(r.begin(), r.end());
      break;
    }
  }
  return out;
}

/// Random confluent model: a random poset whose comparabilities respect
/// index order, a successor map sampled under the confluence constraint,
/// and upward-closed random valuations.
inline DynamicModel random_confluent_model(Rng& rng, int max_worlds,
                                           const std::vector<std::string>& atoms) {
  while (true) {
    const int n = pick(rng, 1, max_worlds);
    std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) leq[i][i] = true;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (chance(rng, 0.3)) leq[i][j] = true;
      }
    }
    for (int k = 0; k < n; ++k) {  // transitive closure
      for (int i = 0; i < n; ++i) {
        if (!leq[i][k]) continue;
        for (int j = 0; j < n; ++j) {
          if (leq[k][j]) leq[i][j] = true;
        }
      }
    }
    // Successors in index order (compatible with the order by construction).
    std::vector<int> succ(static_cast<std::size_t>(n), -1);
    bool dead_end = false;
    for (int w = 0; w < n && !dead_end; ++w) {
      std::vector<int> candidates;
      for (int u = 0; u < n; ++u) {
        bool ok = true;
        for (int v = 0; v < w && ok; ++v) {
          if (leq[v][w] && !leq[succ[v]][u]) ok = false;
        }
        if (ok) candidates.push_back(u);
      }
      if (candidates.empty()) {
        dead_end = true;
      } else {
        succ[w] = candidates[static_cast<std::size_t>(
            pick(rng, 0, static_cast<int>(candidates.size()) - 1))];
      }
    }
    if (dead_end) continue;

    ModelBuilder b(n, [&] {
      std::vector<std::string> names;
      for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
      return names;
    }());
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        if (leq[a][c]) b.set_leq(a, c);
      }
      b.set_succ(a, succ[a]);
    }
    for (const auto& atom : atoms) {
      std::vector<bool> holds(static_cast<std::size_t>(n), false);
      for (int w = 0; w < n; ++w) holds[w] = chance(rng, 0.4);
      for (int w = 0; w < n; ++w) {  // upward closure keeps it monotone
        for (int v = 0; v < n; ++v) {
          if (leq[v][w] && holds[v]) holds[w] = true;
        }
      }
      for (int w = 0; w < n; ++w) {
        if (holds[w]) b.add_atom(w, atom);
      }
    }
    return b.finish(true);
  }
}

/// Random model with the identity order (classically shaped).
inline DynamicModel random_identity_model(Rng& rng, int max_worlds,
                                          const std::vector<std::string>& atoms) {
  const int n = pick(rng, 1, max_worlds);
  ModelBuilder b(n, [&] {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("w" + std::to_string(i));
    return names;
  }());
  for (int w = 0; w < n; ++w) {
    b.set_succ(w, pick(rng, 0, n - 1));
    for (const auto& atom : atoms) {
      if (chance(rng, 0.5)) b.add_atom(w, atom);
    }
  }
  return b.finish(true);
}

/// Independent temporal oracle: k-step unrolling with k up to 2|W|.
inline bool orbit_eventually(const DynamicModel& m, int w,
                             const std::vector<bool>& target) {
  int cur = w;
  for (int k = 0; k <= 2 * m.size(); ++k) {
    if (target[static_cast<std::size_t>(cur)]) return true;
    cur = m.succ(cur);
  }
  return false;
}

inline bool orbit_always(const DynamicModel& m, int w,
                         const std::vector<bool>& target) {
  int cur = w;
  for (int k = 0; k <= 2 * m.size(); ++k) {
    if (!target[static_cast<std::size_t>(cur)]) return false;
    cur = m.succ(cur);
  }
  return true;
}

}  // namespace itl::testing
