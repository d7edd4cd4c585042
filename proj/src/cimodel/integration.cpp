#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsakit/cimodel.hpp"

namespace lsakit::cimodel {

ActivationState integrate(const Eigen::MatrixXd& w, const Vector& initial, std::optional<std::size_t> clamp,
                          double epsilon, std::size_t max_iterations) {
  const auto n = w.rows();
  if (w.cols() != n) throw InputError("link matrix is not square");
  if (initial.size() != n) throw InputError("initial activation has the wrong size");
  if (clamp && static_cast<Eigen::Index>(*clamp) >= n) throw InputError("clamped node out of range");
  if (!(epsilon > 0)) throw InputError("epsilon must be > 0");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (w(i, i) != 0.0) throw InputError("link matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(w(i, j)) || w(i, j) < 0.0) throw InputError("link weights must be finite and nonnegative");
      if (std::abs(w(i, j) - w(j, i)) > 1e-12) throw InputError("link matrix is not symmetric");
    }
  }
  if (!initial.allFinite() || (initial.array() < 0.0).any()) throw InputError("initial activation must be >= 0");

  ActivationState st;
  st.values = initial;
  if (n == 0) {
    st.converged = true;
    return st;
  }
  const double top = st.values.maxCoeff();
  if (top > 1.0) st.values /= top;
  if (clamp) st.values(static_cast<Eigen::Index>(*clamp)) = 1.0;

  for (std::size_t it = 1; it <= max_iterations; ++it) {
    Vector next = w * st.values;
    const double m = next.maxCoeff();
    if (m > 0.0) next /= m;
    if (clamp) next(static_cast<Eigen::Index>(*clamp)) = 1.0;
    const double delta = (next - st.values).cwiseAbs().maxCoeff();
    st.values = std::move(next);
    st.iterations = it;
    if (delta < epsilon) {
      st.converged = true;
      break;
    }
  }
  return st;
}

bool WorkingMemory::contains(std::string_view key) const {
  return std::any_of(items.begin(), items.end(), [&](const WmItem& i) { return i.node.key == key; });
}

WorkingMemory select_wm(const std::vector<NetworkNode>& nodes, const Vector& activation, const WmStrategy& strategy) {
  if (static_cast<std::size_t>(activation.size()) != nodes.size())
    throw InputError("activation vector does not match the node list");
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double x = activation(static_cast<Eigen::Index>(a)), y = activation(static_cast<Eigen::Index>(b));
    if (x != y) return x > y;
    return nodes[a].key < nodes[b].key;
  });
  const auto act = [&](std::size_t i) { return activation(static_cast<Eigen::Index>(i)); };

  WorkingMemory wm;
  wm.strategy = strategy;
  switch (strategy.kind) {
    case WmKind::fixed_count:
      for (std::size_t r = 0; r < order.size() && r < strategy.count; ++r)
        wm.items.push_back({nodes[order[r]], act(order[r])});
      break;
    case WmKind::threshold:
      for (auto i : order)
        if (act(i) >= strategy.theta) wm.items.push_back({nodes[i], act(i)});
      break;
    case WmKind::activation_budget:
      if (strategy.budget_mode == BudgetMode::greedy_prefix) {
        double sum = 0.0;
        for (auto i : order) {
          if (sum + act(i) > strategy.total + 1e-12) break;
          sum += act(i);
          wm.items.push_back({nodes[i], act(i)});
        }
      } else {
        double sum = 0.0;
        for (auto i : order)
          if (act(i) > 0.0) sum += act(i);
        const double scale = sum > strategy.total ? strategy.total / sum : 1.0;
        for (auto i : order)
          if (act(i) > 0.0) wm.items.push_back({nodes[i], act(i) * scale});
      }
      break;
  }
  return wm;
}

// ---------------------------------------------------------------------------

const EpisodicEntry* EpisodicStore::find(std::string_view key) const {
  const auto it = entries_.find(std::string(key));
  return it == entries_.end() ? nullptr : &it->second;
}

double EpisodicStore::decayed(const EpisodicEntry& e, std::size_t cycle, double decay_rate) {
  if (cycle <= e.last_cycle) return e.activation;
  return e.activation * std::pow(decay_rate, static_cast<double>(cycle - e.last_cycle));
}

EpisodicStore episodic_update(EpisodicStore store, const WorkingMemory& wm, std::size_t cycle,
                              const CIParams& params) {
  if (store.last_cycle_ && cycle <= *store.last_cycle_)
    throw InputError("episodic update for cycle " + std::to_string(cycle) + " after cycle " +
                     std::to_string(*store.last_cycle_));
  for (auto& [key, e] : store.entries_) {
    e.activation = EpisodicStore::decayed(e, cycle, params.decay_rate);
    e.last_cycle = cycle;
  }
  for (const auto& item : wm.items) {
    auto it = store.entries_.find(item.node.key);
    if (it == store.entries_.end()) {
      store.entries_.emplace(item.node.key, EpisodicEntry{item.node, std::min(1.0, item.activation), cycle, 1});
    } else {
      auto& e = it->second;
      e.activation = std::min(1.0, e.activation + params.reinforcement_gain * item.activation);
      ++e.occurrences;
    }
  }
  store.last_cycle_ = cycle;
  return store;
}

std::vector<Recalled> episodic_recall(const EpisodicStore& store, const Proposition& p, const SemanticSpace& s,
                                      const CIParams& params, std::size_t cycle) {
  const Vector probe = vecspace::fold_in(s, p.tokens()).vector;
  std::vector<Recalled> out;
  if (probe.norm() == 0.0) return out;
  for (const auto& [key, e] : store.entries()) {
    if (e.node.vector.norm() == 0.0) continue;
    const double a = EpisodicStore::decayed(e, cycle, params.decay_rate);
    if (!(a > params.recall_floor)) continue;
    const double c = vecspace::cosine(e.node.vector, probe);
    if (c >= params.recall_threshold) out.push_back({e.node, c, a});
  }
  std::sort(out.begin(), out.end(), [](const Recalled& a, const Recalled& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.node.key < b.node.key;
  });
  return out;
}

}  // namespace lsakit::cimodel
