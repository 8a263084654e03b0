#ifndef FO2KIT_EFGAME_HPP
#define FO2KIT_EFGAME_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fo2kit/monoid.hpp"

namespace fo2 {

/// Atomic relations between an old and a new pebble position, plus the
/// label of the new position.  Equality of positions is encoded as all
/// four order flags false.
struct AtomicType {
  bool x_less_y = false;
  bool y_less_x = false;
  bool succ_xy = false;  // new = old + 1
  bool succ_yx = false;  // old = new + 1
  char label = 0;

  bool operator==(const AtomicType&) const = default;
};

AtomicType atomic_type(std::string_view w, int old_pos, int new_pos);

/// Two-pebble game on (w, w') preserving labels, order and successor.
/// The game starts with both pebbles on the first positions; a label
/// mismatch there is an immediate Spoiler win (also for k = 0).  True
/// iff Duplicator can answer every one of Spoiler's k moves.
/// Throws Error on empty words.
bool duplicator_wins(std::string_view w, std::string_view w_prime, int k);

/// The word pair (E^k U E^k V E^k)^{k*omega} and its extension by V
/// (one extra V between two copies), where U, V, E are shortest
/// non-empty preimages of s, t, e.  Requires e idempotent and k >= 1.
/// The images alpha(w) = (esete)^omega and alpha(w') =
/// (esete)^omega t (esete)^omega are verified at runtime.
std::pair<std::string, std::string> witness_pair(const Morphism& alpha, int s,
                                                 int t, int e, int k);

struct NecessityEntry {
  int k = 0;
  std::size_t len_w = 0;
  std::size_t len_w_prime = 0;
  int alpha_w = 0;
  int alpha_w_prime = 0;
  bool duplicator_wins = false;
};

struct NecessityReport {
  int s = 0, t = 0, e = 0;
  std::vector<NecessityEntry> entries;  // k = 1 .. k_max
};

/// For a triple falsifying the (esete)^w identity, exhibits for each
/// k <= k_max a pair of words with distinct images under alpha that the
/// k-round game cannot distinguish.  Throws Error when the triple does
/// not falsify the identity.
NecessityReport necessity_check(const Morphism& alpha, int s, int t, int e,
                                int k_max);

}  // namespace fo2

#endif
