#pragma once

// Combinatorial side of curvelab: surfaces, curve words, multicurves, slopes,
// pants decompositions and mapping class words. Nothing here touches floating
// point; the hyperbolic module gives these objects lengths.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curvelab {

/// Topological type of a finite-type orientable surface: genus and number of
/// cusps. Only (0,3), (1,1), (0,4) and (2,0) can be constructed.
class SurfaceSig {
 public:
  static SurfaceSig make(int genus, int cusps);
  /// Parses "g,n".
  static SurfaceSig parse(std::string_view text);

  int genus() const noexcept { return genus_; }
  int cusps() const noexcept { return cusps_; }
  int euler() const noexcept { return 2 - 2 * genus_ - cusps_; }
  /// Number of curves in a pants decomposition, 3g - 3 + n.
  int complexity() const noexcept { return 3 * genus_ - 3 + cusps_; }
  /// Number of free generators of the standard presentation.
  int rank() const noexcept { return 2 * genus_ + (cusps_ > 0 ? cusps_ - 1 : 0); }
  int homology_rank() const noexcept { return rank(); }
  bool closed() const noexcept { return cusps_ == 0; }

  std::string str() const;
  friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;

 private:
  SurfaceSig(int g, int n) : genus_(g), cusps_(n) {}
  int genus_ = 0;
  int cusps_ = 0;
};

/// A letter is +k or -k for generator k in 1..rank; -k is the inverse.
using Letter = int;
/// A group element as a (not necessarily reduced) word.
using Word = std::vector<Letter>;

char letter_char(Letter l);
Letter parse_letter(char c);
std::string word_string(std::span<const Letter> w);

Word inverse(std::span<const Letter> w);
Word free_reduce(std::span<const Letter> w);
Word concat(std::span<const Letter> a, std::span<const Letter> b);

/// A conjugacy class in the fundamental group, stored as a nonempty
/// cyclically reduced word (Dehn-reduced on the closed genus-2 surface).
class CurveWord {
 public:
  /// Reduces `letters` and throws EMPTY_AFTER_REDUCTION for trivial words.
  CurveWord(SurfaceSig sig, std::span<const Letter> letters);
  static CurveWord parse(SurfaceSig sig, std::string_view text);

  const SurfaceSig& sig() const noexcept { return sig_; }
  const Word& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  std::string str() const { return word_string(letters_); }

  /// Least rotation of the word or of its inverse; a key for the unoriented
  /// cyclic word (not for the conjugacy class on the closed surface).
  Word canonical() const;
  CurveWord inverted() const;

  friend bool operator==(const CurveWord& a, const CurveWord& b) {
    return a.sig_ == b.sig_ && a.letters_ == b.letters_;
  }

 private:
  struct Trusted {};
  CurveWord(SurfaceSig sig, Word letters, Trusted) : sig_(sig), letters_(std::move(letters)) {}
  friend CurveWord cyclic_reduce(SurfaceSig, std::span<const Letter>);

  SurfaceSig sig_;
  Word letters_;
};

/// Least rotation of a cyclic word or of its inverse.
Word canonical_cyclic(std::span<const Letter> letters);

/// Free and cyclic cancellation, plus Dehn shortening against the surface
/// relator on (2,0). Idempotent.
CurveWord cyclic_reduce(SurfaceSig sig, std::span<const Letter> word);
CurveWord cyclic_reduce(const CurveWord& word);

/// Cyclically reduced free-group word of a curve on (2,0) with no Dehn
/// rewriting; exposed for the word-length oracle tests.
Word cyclically_reduced_free(std::span<const Letter> word);

/// The surface relator abABcdCD for (2,0); empty otherwise.
Word surface_relator(const SurfaceSig& sig);

/// Exponent-sum vector in the abelianization.
std::vector<long> homology_class(const CurveWord& word);

/// Returns k > 1 when the cyclic word is the k-th power of a shorter word.
int power_exponent(std::span<const Letter> cyclic_word);
bool is_proper_power(const CurveWord& word);

struct EnumerateOptions {
  bool include_powers = false;
  std::size_t cap = 2'000'000;
};

/// One representative per cyclic/inverse class of cyclically reduced words of
/// length <= max_len, ordered by length then lexicographically.
std::vector<CurveWord> enumerate_words(SurfaceSig sig, int max_len, const EnumerateOptions& options = {});

/// Lexicographic order on letters used for enumeration: a < A < b < B < ...
bool letter_less(Letter x, Letter y);
bool word_less(std::span<const Letter> x, std::span<const Letter> y);

enum class Aggregator { Sum, Max };

struct Multicurve {
  std::vector<CurveWord> components;
  Aggregator aggregator = Aggregator::Sum;

  const SurfaceSig& sig() const { return components.front().sig(); }
  static Multicurve make(std::vector<CurveWord> components, Aggregator aggregator = Aggregator::Sum);
  std::string str() const;
  /// True when some component appears more than once (up to cyclic word).
  bool has_repeats() const;
};

/// A primitive homology direction on the punctured torus; (p,q) and (-p,-q)
/// describe the same unoriented simple closed curve.
struct Slope {
  long p = 1;
  long q = 0;

  static Slope make(long p, long q);
  static Slope parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const Slope&, const Slope&) = default;
  friend auto operator<=>(const Slope&, const Slope&) = default;
};

/// Christoffel word with homology class (p,q) on (1,1).
CurveWord word_of_slope(const Slope& s);
/// Inverse of word_of_slope. A word is simple iff it is a rotation of the
/// Christoffel word of its homology class, up to inversion; exact. Throws
/// WRONG_SURFACE or NOT_SIMPLE.
Slope slope_of_word(const CurveWord& word);

/// Trivalent dual graph of a pants decomposition: vertices are pants, edges
/// are decomposition curves (loops allowed), cusps are dangling half-edges.
struct DualGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> cusp_half_edges;

  std::vector<int> degrees() const;
  bool trivalent() const;
};

struct PantsDecomposition {
  SurfaceSig sig;
  std::string tag;
  std::vector<CurveWord> curves;
  DualGraph graph;
};

/// One representative per homeomorphism type, from a hardcoded table that is
/// checked once against an exhaustive trivalent-graph enumeration.
std::vector<PantsDecomposition> enumerate_pants_types(SurfaceSig sig);
PantsDecomposition pants_type(SurfaceSig sig, std::string_view tag);

/// Number of isomorphism classes of connected trivalent graphs with the
/// vertex/edge/half-edge counts of a pants decomposition of `sig`, by brute
/// force. The oracle behind the pants-type table.
int count_dual_graph_types(SurfaceSig sig);
/// Canonical string of a dual graph, invariant under vertex relabelling.
std::string dual_graph_key(const DualGraph& g);

/// Generator table of the mapping class group action on words.
struct MoveSpec {
  std::string name;
  /// Image of each generator 1..rank under the automorphism.
  std::vector<Word> images;
  /// Image of each generator under the inverse automorphism.
  std::vector<Word> inverse_images;
};

const std::vector<MoveSpec>& move_table(const SurfaceSig& sig);

/// Moves are +k / -k for entry k-1 of move_table(sig) and its inverse. The
/// sequence acts right to left: [m1, m2] means m1 after m2.
struct MappingClassWord {
  SurfaceSig sig;
  std::vector<int> moves;

  static MappingClassWord identity(SurfaceSig sig) { return {sig, {}}; }
  static MappingClassWord parse(SurfaceSig sig, std::string_view text);
  std::vector<std::string> move_names() const;
  std::string str() const;
  MappingClassWord then(int move) const;  // prepends `move` (applied last)
};

/// Applies the automorphism to a group element (no cyclic reduction).
Word apply_to_element(const MappingClassWord& mcw, std::span<const Letter> w);
CurveWord apply_mapping_class(const MappingClassWord& mcw, const CurveWord& curve);
Multicurve apply_mapping_class(const MappingClassWord& mcw, const Multicurve& m);
/// Integer-matrix action on slopes; (1,1) only.
Slope apply_to_slope(const MappingClassWord& mcw, const Slope& s);

}  // namespace curvelab
