#include <algorithm>
#include <set>

#include "lsakit/cimodel.hpp"

namespace lsakit::cimodel {

namespace {

// Empty when the word can supply associates, otherwise the reason it can't.
std::string slot_problem(const SemanticSpace& s, const std::string& word, const CIParams& params) {
  const auto i = s.index_of(word);
  if (!i) return "not in the vocabulary";
  if (!params.band().contains(s.stats(*i).global_weight)) {
    return s.stats(*i).global_weight < params.min_weight ? "too frequent (weight below the band)"
                                                         : "too rare (weight above the band)";
  }
  if (s.row_norm(*i) == 0.0) return "zero vector";
  return {};
}

Vector row(const SemanticSpace& s, std::size_t i) { return s.vectors().row(static_cast<Eigen::Index>(i)).transpose(); }

}  // namespace

Associates retrieve_associates(const SemanticSpace& s, const Proposition& p, const CIParams& params) {
  const auto words = p.tokens();
  Associates out;

  // argument vectors usable by the predication filter
  std::vector<Vector> arg_vectors;
  for (const auto& a : p.args)
    if (const auto i = s.index_of(a); i && s.row_norm(*i) > 0.0) arg_vectors.push_back(row(s, *i));

  out.predicate.word = p.predicate;
  out.predicate.note = slot_problem(s, p.predicate, params);
  if (out.predicate.note.empty() && params.n_associates > 0) {
    const auto probe = row(s, *s.index_of(p.predicate));
    const std::size_t pool = p.args.empty() ? params.n_associates : params.predication_pool;
    for (auto& nb : neighbors(s, probe, pool, params.band(), words)) {
      if (out.predicate.associates.size() == params.n_associates) break;
      bool close = p.args.empty();
      if (!close) {
        const auto v = row(s, *s.index_of(nb.term));
        for (const auto& a : arg_vectors)
          if (vecspace::cosine(v, a) >= params.predication_threshold) {
            close = true;
            break;
          }
      }
      if (close) out.predicate.associates.push_back(std::move(nb));
    }
  }

  for (const auto& a : p.args) {
    SlotAssociates slot;
    slot.word = a;
    slot.note = slot_problem(s, a, params);
    if (slot.note.empty() && params.n_associates > 0)
      slot.associates = neighbors(s, row(s, *s.index_of(a)), params.n_associates, params.band(), words);
    out.args.push_back(std::move(slot));
  }
  return out;
}

NetworkNode term_node(const SemanticSpace& s, std::string_view term, Origin origin) {
  return {std::string(term), std::nullopt, vecspace::term_vector(s, term), origin};
}

NetworkNode proposition_node(const SemanticSpace& s, const Proposition& p, Origin origin) {
  return {p.key(), p, vecspace::fold_in(s, p.tokens()).vector, origin};
}

Network build_network(std::vector<NetworkNode> nodes) {
  Network net;
  std::set<std::string> seen;
  for (auto& n : nodes) {
    if (!seen.insert(n.key).second) throw InputError("duplicate network node '" + n.key + "'");
    if (n.vector.size() == 0 || n.vector.norm() == 0.0) {
      net.notes.push_back("dropped '" + n.key + "': zero vector");
      continue;
    }
    net.nodes.push_back(std::move(n));
  }
  if (net.nodes.empty()) throw InputError("network has no usable node");
  const auto m = static_cast<Eigen::Index>(net.nodes.size());
  net.weights = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double w = std::max(0.0, vecspace::cosine(net.nodes[static_cast<std::size_t>(i)].vector,
                                                      net.nodes[static_cast<std::size_t>(j)].vector));
      net.weights(i, j) = net.weights(j, i) = w;
    }
  return net;
}

}  // namespace lsakit::cimodel
