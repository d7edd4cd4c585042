#include <json.hpp>
#include <set>

#include "lsakit/cimodel.hpp"
#include "util/table.hpp"
#include "util/text.hpp"

namespace lsakit::cimodel {

using nlohmann::json;

ComprehensionTrace comprehend(const std::vector<Proposition>& propositions, const SemanticSpace& s,
                              const CIParams& params) {
  if (propositions.empty()) throw InputError("no propositions to comprehend");
  params.validate();

  ComprehensionTrace trace;
  trace.params = params;
  WorkingMemory wm;
  wm.strategy = params.wm;
  EpisodicStore store;

  for (std::size_t i = 0; i < propositions.size(); ++i) {
    const auto& p = propositions[i];
    CycleRecord rec;
    rec.cycle = i + 1;
    rec.input = p;

    std::optional<NetworkNode> head;
    try {
      head = proposition_node(s, p, Origin::text);
      if (head->vector.norm() == 0.0) head.reset();
    } catch (const EmptyProjectionError&) {
    }
    if (!head) {
      rec.skipped = true;
      rec.notes.push_back("skipped: '" + p.text() + "' has no projectable word");
      rec.wm = wm;
      rec.store = store;
      trace.cycles.push_back(std::move(rec));
      continue;
    }

    // 1. episodic memory, 2. associates, 3. link weights
    rec.recalled = episodic_recall(store, p, s, params, rec.cycle);
    rec.associates = retrieve_associates(s, p, params);

    std::vector<NetworkNode> nodes;
    std::set<std::string> keys;
    const auto add = [&](NetworkNode n) {
      if (keys.insert(n.key).second) nodes.push_back(std::move(n));
    };
    add(*head);
    for (const auto* slot : [&] {
           std::vector<const SlotAssociates*> v{&rec.associates.predicate};
           for (const auto& a : rec.associates.args) v.push_back(&a);
           return v;
         }()) {
      if (slot->note.empty())
        add(term_node(s, slot->word, Origin::text));
      else
        rec.notes.push_back("'" + slot->word + "' skipped: " + slot->note);
    }
    for (const auto& item : wm.items) {
      auto n = item.node;
      n.origin = Origin::carried_over;
      add(std::move(n));
    }
    for (const auto& r : rec.recalled) {
      auto n = r.node;
      n.origin = Origin::episodic_recall;
      add(std::move(n));
    }
    for (const auto& nb : rec.associates.predicate.associates) add(term_node(s, nb.term, Origin::associate));
    for (const auto& a : rec.associates.args)
      for (const auto& nb : a.associates) add(term_node(s, nb.term, Origin::associate));

    rec.network = build_network(std::move(nodes));
    for (const auto& n : rec.network.notes) rec.notes.push_back(n);

    // the proposition is always first and never dropped
    Vector initial = Vector::Zero(static_cast<Eigen::Index>(rec.network.nodes.size()));
    initial(0) = 1.0;
    rec.activation = integrate(rec.network.weights, initial, 0, params.epsilon, params.max_iterations);
    if (!rec.activation.converged)
      rec.notes.push_back("integration did not converge in " + std::to_string(params.max_iterations) + " iterations");

    rec.wm = select_wm(rec.network.nodes, rec.activation.values, params.wm);
    if (rec.wm.empty()) rec.notes.push_back("working memory is empty");
    store = episodic_update(std::move(store), rec.wm, rec.cycle, params);
    rec.store = store;
    wm = rec.wm;
    trace.cycles.push_back(std::move(rec));
  }
  return trace;
}

// ---------------------------------------------------------------------------

namespace {

json node_json(const NetworkNode& n) {
  return {{"key", n.key}, {"kind", n.proposition ? "proposition" : "term"}, {"origin", std::string(to_string(n.origin))}};
}

json slot_json(const SlotAssociates& a) {
  json list = json::array();
  for (const auto& nb : a.associates) list.push_back({{"term", nb.term}, {"cosine", nb.cosine}});
  json j{{"word", a.word}, {"associates", list}};
  if (!a.note.empty()) j["skipped"] = a.note;
  return j;
}

json params_json(const CIParams& p) {
  return {{"n_associates", p.n_associates},
          {"predication_threshold", p.predication_threshold},
          {"predication_pool", p.predication_pool},
          {"min_weight", p.min_weight},
          {"max_weight", p.max_weight},
          {"wm_strategy", p.wm.describe()},
          {"decay_rate", p.decay_rate},
          {"reinforcement_gain", p.reinforcement_gain},
          {"recall_threshold", p.recall_threshold},
          {"recall_floor", p.recall_floor},
          {"epsilon", p.epsilon},
          {"max_iterations", p.max_iterations}};
}

}  // namespace

std::string ComprehensionTrace::to_json() const {
  json cycles_j = json::array();
  for (const auto& c : cycles) {
    json j{{"cycle", c.cycle}, {"proposition", c.input.text()}, {"skipped", c.skipped}, {"notes", c.notes}};
    json wm_j = json::array();
    for (const auto& it : c.wm.items) {
      auto n = node_json(it.node);
      n["activation"] = it.activation;
      wm_j.push_back(n);
    }
    json store_j = json::array();
    for (const auto& [key, e] : c.store.entries())
      store_j.push_back({{"key", key},
                         {"activation", e.activation},
                         {"last_cycle", e.last_cycle},
                         {"occurrences", e.occurrences}});
    j["working_memory"] = wm_j;
    j["episodic_store"] = store_j;
    if (!c.skipped) {
      json rec_j = json::array();
      for (const auto& r : c.recalled)
        rec_j.push_back({{"key", r.node.key}, {"cosine", r.cosine}, {"activation", r.activation}});
      json args = json::array();
      for (const auto& a : c.associates.args) args.push_back(slot_json(a));
      json nodes = json::array();
      for (std::size_t k = 0; k < c.network.nodes.size(); ++k) {
        auto n = node_json(c.network.nodes[k]);
        n["activation"] = c.activation.values(static_cast<Eigen::Index>(k));
        nodes.push_back(n);
      }
      json weights = json::array();
      for (Eigen::Index r = 0; r < c.network.weights.rows(); ++r) {
        std::vector<double> row;
        for (Eigen::Index q = 0; q < c.network.weights.cols(); ++q) row.push_back(c.network.weights(r, q));
        weights.push_back(row);
      }
      j["recalled"] = rec_j;
      j["associates"] = {{"predicate", slot_json(c.associates.predicate)}, {"arguments", args}};
      j["nodes"] = nodes;
      j["weights"] = weights;
      j["integration"] = {{"iterations", c.activation.iterations}, {"converged", c.activation.converged}};
    }
    cycles_j.push_back(j);
  }
  return json{{"params", params_json(params)}, {"cycles", cycles_j}}.dump(2) + "\n";
}

std::string ComprehensionTrace::to_text() const {
  std::string out;
  for (const auto& c : cycles) {
    out += "Cycle " + std::to_string(c.cycle) + ": " + c.input.text() + "\n";
    if (c.skipped) {
      for (const auto& n : c.notes) out += "  " + n + "\n";
      out += "\n";
      continue;
    }
    const auto list = [](const SlotAssociates& a) {
      std::vector<std::string> t;
      for (const auto& nb : a.associates) t.push_back(nb.term + " " + util::fixed(nb.cosine));
      return t.empty() ? std::string("(none)") : util::join(t, ", ");
    };
    if (c.associates.predicate.note.empty()) out += "  predicate " + c.associates.predicate.word + ": " + list(c.associates.predicate) + "\n";
    for (const auto& a : c.associates.args)
      if (a.note.empty()) out += "  argument " + a.word + ": " + list(a) + "\n";
    std::vector<std::string> rec;
    for (const auto& r : c.recalled) rec.push_back(r.node.key + " " + util::fixed(r.cosine));
    out += "  recalled: " + (rec.empty() ? std::string("(none)") : util::join(rec, ", ")) + "\n";
    for (const auto& n : c.notes) out += "  note: " + n + "\n";
    out += "  network: " + std::to_string(c.network.nodes.size()) + " nodes, " +
           (c.activation.converged ? "converged after " : "stopped after ") + std::to_string(c.activation.iterations) +
           " iterations\n";
    out += "  working memory (" + c.wm.strategy.describe() + "):\n";
    util::Table t({"item", "activation", "origin"});
    for (const auto& it : c.wm.items) t.add({it.node.key, util::fixed(it.activation), std::string(to_string(it.node.origin))});
    std::string rendered = t.render();
    for (const auto& line : util::split(rendered, '\n'))
      if (!line.empty()) out += "    " + std::string(line) + "\n";
    out += "  episodic memory: " + std::to_string(c.store.size()) + " entries\n\n";
  }
  return out;
}

}  // namespace lsakit::cimodel
