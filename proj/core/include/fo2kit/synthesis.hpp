#ifndef FO2KIT_SYNTHESIS_HPP
#define FO2KIT_SYNTHESIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fo2kit/extended.hpp"
#include "fo2kit/formula.hpp"
#include "fo2kit/monoid.hpp"

namespace fo2 {

/// Cut decomposition of a word w = w_1 ... w_{h+1}.  For every start
/// position k in [1, |w|-|S|], i_k is the smallest i in [k, k+|S|-1]
/// such that some idempotent e absorbs on the right of alpha(w[k..i]);
/// e_k is the first such idempotent in idempotent order.  The cuts are
/// the distinct i_k in ascending order; each cut carries the idempotent
/// of the smallest k that produced it.
struct Factorization {
  std::vector<int> i_k;                        // per k (1-based positions)
  std::vector<int> e_k;                        // idempotent per k
  std::vector<int> cuts;                       // j_1 < ... < j_h
  std::vector<int> cut_idem;                   // f_1 ... f_h
  std::vector<std::pair<int, int>> factors;    // [begin, end], 1-based, h+1
};

/// Requires |w| > |S|.  Existence of every i_k is guaranteed by a
/// pigeonhole argument and verified at runtime.
Factorization factorize(const Morphism& alpha, std::string_view w);

/// The encoding of w over the extended alphabet: a single letter
/// (box, alpha(w), box) when |w| <= |S|, otherwise one letter
/// (f_{k-1}, alpha(w_k), f_k) per factor with boundary guards box.
/// The result is well-formed and beta(eta(w)) = alpha(w), verified at
/// runtime.
ExtWord eta(const Morphism& alpha, std::string_view w);

/// Per-position view of eta: the label of each distinguished position
/// (the leftmost position of a factor), absent elsewhere.  Index 0 of
/// the result corresponds to position 1.
std::vector<std::optional<ExtLetter>> eta_labels(const Morphism& alpha,
                                                 std::string_view w);

/// A word fragment around a position together with capped distances to
/// both word ends: dist_left = min(pos-1, radius), dist_right =
/// min(|w|-pos, radius), letters = w[pos-dist_left .. pos+dist_right].
struct Window {
  int dist_left = 0;
  int dist_right = 0;
  int radius = 0;
  std::string letters;
};

/// Window radius used for locality: 2|S|+1.
int window_radius(const Monoid& m);

Window window_at(std::string_view w, int pos, int radius);

/// Whether the center position is distinguished, and with which label,
/// in any word agreeing with this window; computed by re-running the
/// factorization logic on the fragment.
std::optional<ExtLetter> window_profile(const Morphism& alpha, const Window& win);

/// Subset of the extended alphabet as a bitset over letter indices.
struct LetterSet {
  std::vector<std::uint64_t> bits;

  static LetterSet none(int universe);
  static LetterSet full(int universe);
  bool contains(int i) const {
    return (bits[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1;
  }
  void insert(int i) { bits[static_cast<size_t>(i) >> 6] |= 1ull << (i & 63); }
  void erase(int i) { bits[static_cast<size_t>(i) >> 6] &= ~(1ull << (i & 63)); }
  int count() const;
  bool operator==(const LetterSet&) const = default;
};

/// The three families of pseudo-well-formed value sets.
///   Prefix: beta-image of P^C[g]: the empty word plus all pseudo
///           well-formed words with right guard g ({eps} when g is box).
///   Suffix: beta-image of S^C[g]: symmetric, on left guards.
///   Inner:  beta-image of T^C[g1,g2]: non-empty pseudo well-formed
///           words with the given outer guards, plus the empty word
///           when g1 = g2 is an idempotent.
enum class GuardSet { Prefix, Suffix, Inner };

/// Exact finite image, computed by a reachability fixpoint over
/// (guard, accumulated value) states, never by word enumeration.
/// Sorted ascending.
std::vector<int> guard_values(const ExtAlphabet& B, const Monoid& m,
                              const LetterSet& C, GuardSet kind, Guard g1,
                              Guard g2 = Guard::box());

/// Parameters of one synthesis subproblem: the language of C-words u
/// with t1 * beta(u) * t2 = s, relativized to T^C[e1,e2].
struct SynthKey {
  LetterSet letters;
  Guard e1, e2;
  int t1 = 0;
  int t2 = 0;
  int s = 0;

  bool operator==(const SynthKey&) const = default;
};

struct SynthKeyHash {
  std::size_t operator()(const SynthKey& k) const;
};

struct SynthConfig {
  std::size_t max_ext_alphabet = 5000;
  std::size_t node_budget = 10'000'000;
};

/// Formula synthesis for a morphism whose semigroup satisfies the
/// (esete)^w = (esete)^w t (esete)^w identity.  synth_main3 produces
/// FO2(<) sentences over the extended alphabet; synth_language lowers
/// them to an FO2(<,succ) sentence over the input alphabet.
class Synthesizer {
public:
  explicit Synthesizer(Morphism alpha, SynthConfig cfg = {});

  const Morphism& morphism() const { return alpha_; }
  const Monoid& monoid() const { return alpha_.m(); }
  const ExtAlphabet& ext() const { return ext_; }
  FormulaArena& arena() { return arena_; }
  const SynthConfig& config() const { return cfg_; }

  /// Key for the full problem: C = B, boundary guards box, unit contexts.
  SynthKey full_key(int s) const;

  /// t1 absorbs every admissible left extension up to a right multiple:
  /// for every guard f and every value v of T^C[e1,f], t1 in t1*v*M.
  bool is_left_saturated(const SynthKey& key);
  bool is_right_saturated(const SynthKey& key);

  struct BlockingLetter {
    int letter;   // index into ext()
    Guard guard;  // right guard (left search) / left guard (right search)
  };
  /// Shortest-word search for a letter witnessing non-saturation; the
  /// universally-quantified blocking property is verified before
  /// returning.  Requires the corresponding saturation check to fail.
  BlockingLetter find_blocking_letter(const SynthKey& key);
  BlockingLetter find_blocking_letter_right(const SynthKey& key);

  /// Cached guard_values for this synthesizer's monoid.
  const std::vector<int>& values(const LetterSet& C, GuardSet kind, Guard g1,
                                 Guard g2 = Guard::box());

  /// FO2(<) sentence over the extended alphabet that coincides with
  /// { u | t1 beta(u) t2 = s } over T^C[e1,e2].  Memoized on the key;
  /// terminates by the (|C|, |t1 M|, |M t2|) measure.
  FormulaId synth_main3(const SynthKey& key);

  /// FO2(<,succ) sentence over the input alphabet agreeing with
  /// { w | alpha(w) in accepting } on all non-empty words.  Requires the
  /// eqdad identity to hold (throws Error otherwise); throws BudgetError
  /// when the node budget is exhausted.
  FormulaId synth_language(const std::vector<int>& accepting);

  /// Formula with one free variable v that holds exactly at positions
  /// that are distinguished with label b (disjunction over all window
  /// contents that profile to b).
  FormulaId alpha_b_formula(int b_index, Var v);
  /// Disjunction of alpha_b over all realizable labels.
  FormulaId distinguished_formula(Var v);

  /// Number of saturated base cases taken so far; each one verified the
  /// constancy of t1*v*t2 over the admissible values.
  std::size_t base_case_count() const { return base_cases_; }

  const std::unordered_map<SynthKey, FormulaId, SynthKeyHash>& memo() const {
    return memo_;
  }

private:
  struct ValueKey {
    LetterSet letters;
    GuardSet kind;
    Guard g1, g2;
    bool operator==(const ValueKey&) const = default;
  };
  struct ValueKeyHash {
    std::size_t operator()(const ValueKey& k) const;
  };
  struct WindowContent {
    int dl, dr;
    std::string letters;
  };

  bool in_right_ideal(int x, int y) const {  // y in xM
    return rm_reach_[static_cast<size_t>(x)][static_cast<size_t>(y)];
  }
  bool in_left_ideal(int x, int y) const {  // y in Mx
    return lm_reach_[static_cast<size_t>(x)][static_cast<size_t>(y)];
  }
  int right_ideal_size(int x) const;
  int left_ideal_size(int x) const;

  void check_key(const SynthKey& key);
  std::vector<int> blocking_r_set(const SynthKey& key, int letter, bool left);
  void ensure_window_catalog();
  FormulaId pin_formula(const WindowContent& wc, Var v);
  FormulaId translate(FormulaId b_formula);

  Morphism alpha_;
  SynthConfig cfg_;
  ExtAlphabet ext_;
  FormulaArena arena_;
  std::vector<std::vector<bool>> rm_reach_;  // [x][y]: y in xM
  std::vector<std::vector<bool>> lm_reach_;  // [x][y]: y in Mx
  std::unordered_map<SynthKey, FormulaId, SynthKeyHash> memo_;
  std::unordered_map<ValueKey, std::vector<int>, ValueKeyHash> value_cache_;
  std::size_t base_cases_ = 0;
  int depth_ = 0;

  bool catalog_built_ = false;
  std::vector<WindowContent> contents_;
  std::vector<std::vector<int>> bucket_;               // b -> content indices
  std::unordered_map<std::uint64_t, FormulaId> alpha_b_cache_;  // (b, var)
  FormulaId distinguished_[2] = {0, 0};
  bool distinguished_built_[2] = {false, false};
  std::unordered_map<FormulaId, FormulaId> translate_memo_;
};

}  // namespace fo2

#endif
