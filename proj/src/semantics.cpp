#include "itl/semantics.hpp"

#include <stdexcept>

namespace itl {

const std::vector<bool>& TruthAssignment::truth_set(const Formula& f) const {
  auto idx = sigma.index_of(f);
  if (!idx) throw std::invalid_argument("formula not in closure set: " + f.to_string());
  return sets[static_cast<std::size_t>(*idx)];
}

bool TruthAssignment::holds_at(const Formula& f, int world) const {
  return truth_set(f).at(static_cast<std::size_t>(world));
}

namespace {

enum class ImplicationStyle { Intuitionistic, Classical };

TruthAssignment evaluate_impl(const DynamicModel& m, const ClosureSet& sigma,
                              ImplicationStyle style) {
  const int n = m.size();
  TruthAssignment ta;
  ta.sigma = sigma;
  ta.sets.assign(sigma.size(), std::vector<bool>(static_cast<std::size_t>(n), false));

  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const Formula& f = sigma.at(i);
    std::vector<bool>& out = ta.sets[i];
    switch (f.kind()) {
      case Connective::Atom:
        for (int w = 0; w < n; ++w) out[static_cast<std::size_t>(w)] = m.has_atom(w, f.atom_name());
        break;
      case Connective::Falsum:
        break;
      case Connective::And: {
        const auto& l = ta.truth_set(f.lhs());
        const auto& r = ta.truth_set(f.rhs());
        for (int w = 0; w < n; ++w) {
          out[static_cast<std::size_t>(w)] =
              l[static_cast<std::size_t>(w)] && r[static_cast<std::size_t>(w)];
        }
        break;
      }
      case Connective::Or: {
        const auto& l = ta.truth_set(f.lhs());
        const auto& r = ta.truth_set(f.rhs());
        for (int w = 0; w < n; ++w) {
          out[static_cast<std::size_t>(w)] =
              l[static_cast<std::size_t>(w)] || r[static_cast<std::size_t>(w)];
        }
        break;
      }
      case Connective::Implies: {
        const auto& l = ta.truth_set(f.lhs());
        const auto& r = ta.truth_set(f.rhs());
        if (style == ImplicationStyle::Classical) {
          for (int w = 0; w < n; ++w) {
            out[static_cast<std::size_t>(w)] =
                !l[static_cast<std::size_t>(w)] || r[static_cast<std::size_t>(w)];
          }
        } else {
          for (int w = 0; w < n; ++w) {
            bool ok = true;
            for (int v = 0; v < n && ok; ++v) {
              if (m.leq(w, v) && l[static_cast<std::size_t>(v)] &&
                  !r[static_cast<std::size_t>(v)]) {
                ok = false;
              }
            }
            out[static_cast<std::size_t>(w)] = ok;
          }
        }
        break;
      }
      case Connective::Next: {
        const auto& s = ta.truth_set(f.sub());
        for (int w = 0; w < n; ++w) {
          out[static_cast<std::size_t>(w)] = s[static_cast<std::size_t>(m.succ(w))];
        }
        break;
      }
      case Connective::Eventually: {
        // Least fixpoint of reachability along the functional graph of succ.
        out = ta.truth_set(f.sub());
        bool changed = true;
        while (changed) {
          changed = false;
          for (int w = 0; w < n; ++w) {
            if (!out[static_cast<std::size_t>(w)] &&
                out[static_cast<std::size_t>(m.succ(w))]) {
              out[static_cast<std::size_t>(w)] = true;
              changed = true;
            }
          }
        }
        break;
      }
      case Connective::Henceforth: {
        // Greatest fixpoint: the orbit must stay inside the subformula set.
        out = ta.truth_set(f.sub());
        bool changed = true;
        while (changed) {
          changed = false;
          for (int w = 0; w < n; ++w) {
            if (out[static_cast<std::size_t>(w)] &&
                !out[static_cast<std::size_t>(m.succ(w))]) {
              out[static_cast<std::size_t>(w)] = false;
              changed = true;
            }
          }
        }
        break;
      }
    }
  }
  return ta;
}

}  // namespace

TruthAssignment evaluate(const DynamicModel& m, const ClosureSet& sigma) {
  return evaluate_impl(m, sigma, ImplicationStyle::Intuitionistic);
}

TruthAssignment evaluate(const DynamicModel& m, const Formula& f) {
  return evaluate(m, subformula_closure(f));
}

bool holds(const DynamicModel& m, int world, const Formula& f) {
  if (world < 0 || world >= m.size()) {
    throw std::invalid_argument("holds: unknown world index " + std::to_string(world));
  }
  return evaluate(m, f).holds_at(f, world);
}

std::vector<Formula> sigma_set(const DynamicModel& m, const ClosureSet& sigma,
                               int world) {
  TruthAssignment ta = evaluate(m, sigma);
  std::vector<Formula> out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (ta.sets[i][static_cast<std::size_t>(world)]) out.push_back(sigma.at(i));
  }
  return out;
}

SigmaSubset sigma_index_set(const TruthAssignment& ta, int world) {
  SigmaSubset out;
  for (std::size_t i = 0; i < ta.sets.size(); ++i) {
    if (ta.sets[i][static_cast<std::size_t>(world)]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<Eventuality> eventualities(const DynamicModel& m,
                                       const ClosureSet& sigma) {
  TruthAssignment ta = evaluate(m, sigma);
  std::vector<Eventuality> out;
  for (int w = 0; w < m.size(); ++w) {
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      const Formula& f = sigma.at(i);
      const bool true_here = ta.sets[i][static_cast<std::size_t>(w)];
      if (f.is(Connective::Eventually) && true_here) {
        out.push_back({w, f});
      } else if (f.is(Connective::Henceforth) && !true_here) {
        out.push_back({w, f});
      }
    }
  }
  return out;
}

Fulfillment fulfillment(const DynamicModel& m, const Eventuality& e) {
  if (!e.formula.is(Connective::Eventually) &&
      !e.formula.is(Connective::Henceforth)) {
    throw std::invalid_argument("fulfillment: not a temporal eventuality shape");
  }
  TruthAssignment ta = evaluate(m, e.formula);
  const bool outer = ta.holds_at(e.formula, e.world);
  if (e.is_eventually() ? !outer : outer) {
    throw std::invalid_argument("fulfillment: (" + m.world_name(e.world) + ", " +
                                e.formula.to_string() +
                                ") is not an eventuality of the model");
  }
  const auto& sub = ta.truth_set(e.formula.sub());
  Fulfillment out;
  int w = e.world;
  for (int step = 0; step < m.size(); ++step) {
    out.worlds.push_back(w);
    const bool sub_here = sub[static_cast<std::size_t>(w)];
    if (e.is_eventually() ? sub_here : !sub_here) return out;
    w = m.succ(w);
  }
  // Unreachable for a genuine eventuality: the orbit revisits a world
  // within |W| steps, so the flip must occur before then.
  throw std::logic_error("fulfillment: no discharge within |W| steps");
}

TruthAssignment classical_evaluate(const DynamicModel& m, const ClosureSet& sigma) {
  if (!m.order_is_identity()) {
    throw std::invalid_argument("classical_evaluate: order is not the identity");
  }
  return evaluate_impl(m, sigma, ImplicationStyle::Classical);
}

TruthAssignment classical_evaluate(const DynamicModel& m, const Formula& f) {
  return classical_evaluate(m, subformula_closure(f));
}

}  // namespace itl
