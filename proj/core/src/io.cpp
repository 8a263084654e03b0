#include "fo2kit/io.hpp"

#include <nlohmann/json.hpp>

#include "fo2kit/error.hpp"

namespace fo2 {

using nlohmann::json;

namespace {

json verdict_to_json(const Verdict& v) {
  json j;
  j["holds"] = v.holds;
  if (!v.holds) {
    json w = json::object();
    for (const auto& [role, element] : v.witness)
      w[role] = element;
    j["witness"] = w;
  }
  return j;
}

}  // namespace

Dfa dfa_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("dfa json: ") + e.what(),
                     static_cast<size_t>(e.byte));
  }
  try {
    std::string letters;
    for (const auto& a : j.at("alphabet")) {
      std::string s = a.get<std::string>();
      if (s.size() != 1)
        throw Error("dfa json: alphabet entries must be single characters");
      letters += s;
    }
    Dfa dfa;
    dfa.alphabet = Alphabet(letters);
    dfa.states = j.at("states").get<int>();
    dfa.initial = j.at("initial").get<int>();
    dfa.accepting.assign(static_cast<size_t>(dfa.states), false);
    for (int q : j.at("accepting").get<std::vector<int>>()) {
      if (q < 0 || q >= dfa.states)
        throw Error("dfa json: accepting state out of range");
      dfa.accepting[static_cast<size_t>(q)] = true;
    }
    dfa.next = j.at("transitions").get<std::vector<std::vector<int>>>();
    dfa.validate();
    return dfa;
  } catch (const json::exception& e) {
    throw Error(std::string("dfa json: ") + e.what());
  }
}

std::string dfa_to_json(const Dfa& dfa, int indent) {
  json j;
  j["alphabet"] = json::array();
  for (int a = 0; a < dfa.alphabet.size(); ++a)
    j["alphabet"].push_back(std::string(1, dfa.alphabet.letter(a)));
  j["states"] = dfa.states;
  j["initial"] = dfa.initial;
  json acc = json::array();
  for (int q = 0; q < dfa.states; ++q)
    if (dfa.accepting[static_cast<size_t>(q)])
      acc.push_back(q);
  j["accepting"] = acc;
  j["transitions"] = dfa.next;
  return j.dump(indent);
}

std::string monoid_to_json(const Morphism& alpha, int indent) {
  const Monoid& m = alpha.m();
  json j;
  j["size"] = m.size();
  j["identity"] = m.identity;
  j["elements"] = m.elements;
  json table = json::array();
  for (int x = 0; x < m.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < m.size(); ++y)
      row.push_back(m.mul(x, y));
    table.push_back(row);
  }
  j["table"] = table;
  json gens = json::object();
  for (int a = 0; a < alpha.alphabet.size(); ++a)
    gens[std::string(1, alpha.alphabet.letter(a))] = alpha.image(a);
  j["generators"] = gens;
  j["semigroup"] = m.semigroup;
  j["idempotents"] = m.idempotents;
  j["omega"] = uniform_omega(m);
  return j.dump(indent);
}

std::string class_report_to_json(const ClassReport& report, int indent) {
  json j;
  j["aperiodic"] = verdict_to_json(report.aperiodic);
  j["in_da"] = verdict_to_json(report.in_da);
  j["eqdad"] = verdict_to_json(report.eqdad);
  j["local_da"] = verdict_to_json(report.local_da);
  j["monoid_size"] = report.monoid_size;
  j["semigroup_size"] = report.semigroup_size;
  j["accepts_empty"] = report.accepts_empty;
  j["fo_lt"] = report.aperiodic.holds;
  j["fo2_lt"] = report.in_da.holds;
  j["fo2_lt_succ"] = report.eqdad.holds;
  return j.dump(indent);
}

std::string necessity_report_to_json(const NecessityReport& report, int indent) {
  json j;
  j["witness"] = {{"s", report.s}, {"t", report.t}, {"e", report.e}};
  json entries = json::array();
  for (const auto& entry : report.entries) {
    json e;
    e["k"] = entry.k;
    e["len_w"] = entry.len_w;
    e["len_w_prime"] = entry.len_w_prime;
    e["alpha_w"] = entry.alpha_w;
    e["alpha_w_prime"] = entry.alpha_w_prime;
    e["duplicator_wins"] = entry.duplicator_wins;
    entries.push_back(e);
  }
  j["entries"] = entries;
  return j.dump(indent);
}

}  // namespace fo2
