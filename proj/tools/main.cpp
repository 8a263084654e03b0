// Command line front end: classify regular languages by semigroup
// identities, synthesize FO2(<,succ) sentences, and run the two-pebble
// game.  Machine output is JSON on stdout; diagnostics go to stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fo2kit/efgame.hpp"
#include "fo2kit/error.hpp"
#include "fo2kit/formula.hpp"
#include "fo2kit/identities.hpp"
#include "fo2kit/io.hpp"
#include "fo2kit/synthesis.hpp"

using nlohmann::json;

namespace {

constexpr int kIndent = 2;

struct LanguageInput {
  std::string regex;
  std::string dfa_path;
  std::string alphabet;

  void add_options(CLI::App* cmd) {
    auto* r = cmd->add_option("--regex", regex, "Regular expression input");
    auto* d = cmd->add_option("--dfa", dfa_path, "Path to a DFA JSON file");
    cmd->add_option("--alphabet", alphabet,
                    "Alphabet for --regex (default: letters of the regex)");
    r->excludes(d);
  }

  fo2::Dfa load() const {
    if (!regex.empty()) {
      fo2::Alphabet a = alphabet.empty() ? fo2::infer_alphabet(regex)
                                         : fo2::Alphabet(alphabet);
      return fo2::determinize(fo2::compile_nfa(fo2::parse_regex(regex, a)));
    }
    if (!dfa_path.empty()) {
      std::ifstream in(dfa_path);
      if (!in)
        throw fo2::Error("cannot open DFA file: " + dfa_path);
      std::stringstream buf;
      buf << in.rdbuf();
      return fo2::dfa_from_json(buf.str());
    }
    throw fo2::Error("provide --regex or --dfa");
  }
};

std::size_t node_budget_from_env(std::size_t flag_value) {
  if (flag_value != 0)
    return flag_value;
  if (const char* env = std::getenv("FO2KIT_NODE_BUDGET"))
    return static_cast<std::size_t>(std::stoull(env));
  return fo2::SynthConfig{}.node_budget;
}

int run_analyze(const LanguageInput& input) {
  fo2::ClassReport report = fo2::classify(fo2::build_pipeline(input.load()));
  std::cout << fo2::class_report_to_json(report, kIndent) << "\n";
  return 0;
}

int run_monoid(const LanguageInput& input) {
  fo2::Pipeline p = fo2::build_pipeline(input.load());
  std::cout << fo2::monoid_to_json(p.morphism, kIndent) << "\n";
  return 0;
}

int run_synthesize(const LanguageInput& input, int verify_len,
                   std::size_t node_budget) {
  fo2::Pipeline p = fo2::build_pipeline(input.load());

  fo2::Verdict eqdad = fo2::check_eqdad(p.monoid());
  if (!eqdad.holds) {
    json j;
    j["error"] = "the language is not definable in FO2(<,succ): the "
                 "(esete)^w = (esete)^w t (esete)^w identity fails";
    json w = json::object();
    for (const auto& [role, element] : eqdad.witness)
      w[role] = element;
    j["witness"] = w;
    std::cout << j.dump(kIndent) << "\n";
    return 1;
  }

  fo2::SynthConfig cfg;
  cfg.node_budget = node_budget;
  fo2::Synthesizer synth(p.morphism, cfg);
  fo2::FormulaId formula = synth.synth_language(p.accepting);

  // Model-check against the minimal DFA.  The empty word is compared
  // through the accepts_empty flag, not the formula.
  fo2::Evaluator evaluate(synth.arena(), formula);
  json mismatches = json::array();
  std::size_t total = 0, ok = 0;
  for (const std::string& w :
       fo2::enumerate_words(p.dfa.alphabet, verify_len)) {
    ++total;
    bool expected = fo2::accepts(p.dfa, w);
    bool got = w.empty() ? p.accepts_empty
                         : evaluate(fo2::to_symbols(p.dfa.alphabet, w));
    if (expected == got) {
      ++ok;
    } else if (mismatches.size() < 20) {
      mismatches.push_back(w);
    }
  }

  json j;
  j["formula"] = fo2::to_sexpr(synth.arena(), formula, p.dfa.alphabet);
  j["formula_nodes"] = synth.arena().reachable_size(formula);
  j["accepts_empty"] = p.accepts_empty;
  j["verify_len"] = verify_len;
  j["verified_total"] = total;
  j["verified_ok"] = ok;
  j["mismatches"] = mismatches;
  std::cout << j.dump(kIndent) << "\n";
  if (ok != total) {
    std::cerr << "synthesize: model check FAILED on " << (total - ok)
              << " of " << total << " words\n";
    return 1;
  }
  std::cerr << "synthesize: verified " << ok << "/" << total << " words\n";
  return 0;
}

int run_efgame(const LanguageInput& input, const std::string& w,
               const std::string& wp, int k, bool from_witness, int kmax) {
  if (from_witness) {
    fo2::Pipeline p = fo2::build_pipeline(input.load());
    fo2::Verdict eqdad = fo2::check_eqdad(p.monoid());
    if (eqdad.holds)
      throw fo2::Error("efgame --from-witness: the identity holds, "
                       "there is no falsifying witness");
    int s = 0, t = 0, e = 0;
    for (const auto& [role, element] : eqdad.witness) {
      if (role == "s") s = element;
      if (role == "t") t = element;
      if (role == "e") e = element;
    }
    fo2::NecessityReport report = fo2::necessity_check(p.morphism, s, t, e, kmax);
    std::cout << fo2::necessity_report_to_json(report, kIndent) << "\n";
    return 0;
  }
  bool wins = fo2::duplicator_wins(w, wp, k);
  json j;
  j["w"] = w;
  j["w_prime"] = wp;
  j["k"] = k;
  j["duplicator_wins"] = wins;
  std::cout << j.dump(kIndent) << "\n";
  return 0;
}

int run_check_formula(const LanguageInput& input, const std::string& formula,
                      int max_len) {
  fo2::Dfa dfa = fo2::minimize(input.load());
  fo2::FormulaArena arena;
  fo2::FormulaId f = fo2::parse_sexpr(arena, formula, dfa.alphabet);
  fo2::Evaluator evaluate(arena, f);

  json mismatches = json::array();
  std::size_t total = 0, agree = 0;
  for (const std::string& w : fo2::enumerate_words(dfa.alphabet, max_len)) {
    ++total;
    bool lang = fo2::accepts(dfa, w);
    bool form = evaluate(fo2::to_symbols(dfa.alphabet, w));
    if (lang == form)
      ++agree;
    else if (mismatches.size() < 50)
      mismatches.push_back(w);
  }
  json j;
  j["total"] = total;
  j["agree"] = agree;
  j["uses_succ"] = arena.uses_succ(f);
  j["mismatches"] = mismatches;
  std::cout << j.dump(kIndent) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definability toolkit for regular languages: decides the "
               "FO(<), FO2(<) and FO2(<,succ) characterizations over the "
               "syntactic semigroup, synthesizes FO2(<,succ) sentences, "
               "and plays the two-pebble order/successor game"};
  app.require_subcommand(1);

  LanguageInput analyze_input;
  auto* analyze = app.add_subcommand(
      "analyze", "Classify a language by the semigroup identities");
  analyze_input.add_options(analyze);

  LanguageInput monoid_input;
  auto* monoid = app.add_subcommand(
      "monoid", "Dump the syntactic monoid of the minimal DFA");
  monoid_input.add_options(monoid);

  LanguageInput synth_input;
  int verify_len = 8;
  std::size_t node_budget = 0;
  auto* synthesize = app.add_subcommand(
      "synthesize", "Produce an FO2(<,succ) sentence for the language");
  synth_input.add_options(synthesize);
  synthesize->add_option("--verify-len", verify_len,
                         "Model-check the sentence on all words up to this "
                         "length (default 8)");
  synthesize->add_option("--node-budget", node_budget,
                         "Formula node budget (default 10^7; env "
                         "FO2KIT_NODE_BUDGET also applies)");

  LanguageInput game_input;
  std::string game_w, game_wp;
  int game_k = 1, game_kmax = 2;
  bool from_witness = false;
  auto* efgame = app.add_subcommand(
      "efgame", "Two-pebble game on a pair of words, or a necessity report");
  game_input.add_options(efgame);
  efgame->add_option("--w", game_w, "First word");
  efgame->add_option("--wp", game_wp, "Second word");
  efgame->add_option("--k", game_k, "Number of rounds (default 1)");
  efgame->add_flag("--from-witness", from_witness,
                   "Derive witness words from the failing identity of the "
                   "given language");
  efgame->add_option("--kmax", game_kmax,
                     "Largest round count for --from-witness (default 2)");

  LanguageInput check_input;
  std::string check_formula_text;
  int check_max_len = 6;
  auto* check = app.add_subcommand(
      "check-formula", "Compare a formula against a language on all short words");
  check_input.add_options(check);
  check->add_option("--formula", check_formula_text, "Formula s-expression")
      ->required();
  check->add_option("--max-len", check_max_len,
                    "Maximum word length (default 6)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed())
      return run_analyze(analyze_input);
    if (monoid->parsed())
      return run_monoid(monoid_input);
    if (synthesize->parsed())
      return run_synthesize(synth_input, verify_len,
                            node_budget_from_env(node_budget));
    if (efgame->parsed())
      return run_efgame(game_input, game_w, game_wp, game_k, from_witness,
                        game_kmax);
    if (check->parsed())
      return run_check_formula(check_input, check_formula_text, check_max_len);
  } catch (const fo2::BudgetError& e) {
    std::cerr << "error (budget): " << e.what() << "\n";
    return 3;
  } catch (const fo2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
