#include "curvelab/topology.hpp"

#include <algorithm>
#include <optional>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <set>

#include "curvelab/error.hpp"

namespace curvelab {

namespace {

long parse_long(std::string_view text, std::string_view what) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  long value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    fail(ErrorCode::ParseError, "bad integer '" + std::string(text) + "' in " + std::string(what));
  }
  return value;
}

int letter_key(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

void check_letters(const SurfaceSig& sig, std::span<const Letter> w) {
  for (Letter l : w) {
    if (l == 0 || std::abs(l) > sig.rank()) {
      fail(ErrorCode::InvalidArgument, "letter out of range for surface " + sig.str());
    }
  }
}

Word rotate(std::span<const Letter> w, std::size_t start) {
  Word out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[(start + i) % w.size()]);
  return out;
}

// Rotations of the relator and of its inverse.
const std::vector<Word>& relator_rotations() {
  static const std::vector<Word> rotations = [] {
    const Word r{1, 2, -1, -2, 3, 4, -3, -4};
    const Word ri = inverse(r);
    std::vector<Word> out;
    for (std::size_t i = 0; i < r.size(); ++i) {
      out.push_back(rotate(r, i));
      out.push_back(rotate(ri, i));
    }
    return out;
  }();
  return rotations;
}

// One Dehn shortening step on a cyclic word; false when none applies.
bool dehn_step(Word& w) {
  const std::size_t n = w.size();
  if (n < 5) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Word& rel : relator_rotations()) {
      std::size_t k = 0;
      const std::size_t limit = std::min<std::size_t>(rel.size(), n);
      while (k < limit && w[(i + k) % n] == rel[k]) ++k;
      if (2 * k > rel.size()) {
        Word rotated = rotate(w, i);
        Word out = inverse(std::span<const Letter>(rel).subspan(k));
        out.insert(out.end(), rotated.begin() + static_cast<long>(k), rotated.end());
        w = std::move(out);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

// --- SurfaceSig -----------------------------------------------------------

SurfaceSig SurfaceSig::make(int genus, int cusps) {
  const bool supported = (genus == 0 && cusps == 3) || (genus == 1 && cusps == 1) ||
                         (genus == 0 && cusps == 4) || (genus == 2 && cusps == 0);
  if (!supported) {
    fail(ErrorCode::UnsupportedSurface,
         "surface " + std::to_string(genus) + "," + std::to_string(cusps) +
             " is not one of 0,3 1,1 0,4 2,0");
  }
  return SurfaceSig(genus, cusps);
}

SurfaceSig SurfaceSig::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) fail(ErrorCode::ParseError, "surface must be 'g,n', got '" + std::string(text) + "'");
  return make(static_cast<int>(parse_long(text.substr(0, comma), "surface")),
              static_cast<int>(parse_long(text.substr(comma + 1), "surface")));
}

std::string SurfaceSig::str() const { return std::to_string(genus_) + "," + std::to_string(cusps_); }

// --- words ----------------------------------------------------------------

char letter_char(Letter l) {
  const char base = static_cast<char>('a' + std::abs(l) - 1);
  return l > 0 ? base : static_cast<char>(std::toupper(static_cast<unsigned char>(base)));
}

Letter parse_letter(char c) {
  if (c >= 'a' && c <= 'd') return c - 'a' + 1;
  if (c >= 'A' && c <= 'D') return -(c - 'A' + 1);
  fail(ErrorCode::ParseError, std::string("unknown letter '") + c + "'");
}

std::string word_string(std::span<const Letter> w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(letter_char(l));
  return s;
}

Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = -l;
  return out;
}

Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word cyclically_reduced_free(std::span<const Letter> word) {
  Word w = free_reduce(word);
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(w.begin() + static_cast<long>(lo), w.begin() + static_cast<long>(hi));
}

Word surface_relator(const SurfaceSig& sig) {
  if (sig.closed()) return {1, 2, -1, -2, 3, 4, -3, -4};
  return {};
}

bool letter_less(Letter x, Letter y) { return letter_key(x) < letter_key(y); }

bool word_less(std::span<const Letter> x, std::span<const Letter> y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), letter_less);
}

CurveWord cyclic_reduce(SurfaceSig sig, std::span<const Letter> word) {
  check_letters(sig, word);
  Word w = cyclically_reduced_free(word);
  if (sig.closed()) {
    while (!w.empty() && dehn_step(w)) w = cyclically_reduced_free(w);
  }
  if (w.empty()) fail(ErrorCode::EmptyAfterReduction, "word '" + word_string(word) + "' is trivial");
  return CurveWord(sig, std::move(w), CurveWord::Trusted{});
}

CurveWord cyclic_reduce(const CurveWord& word) { return cyclic_reduce(word.sig(), word.letters()); }

CurveWord::CurveWord(SurfaceSig sig, std::span<const Letter> letters) : CurveWord(cyclic_reduce(sig, letters)) {}

CurveWord CurveWord::parse(SurfaceSig sig, std::string_view text) {
  Word w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') continue;
    const Letter l = parse_letter(c);
    if (std::abs(l) > sig.rank()) {
      fail(ErrorCode::ParseError, std::string("letter '") + c + "' is not a generator of surface " + sig.str());
    }
    w.push_back(l);
  }
  if (w.empty()) fail(ErrorCode::ParseError, "empty curve word");
  return CurveWord(sig, w);
}

Word CurveWord::canonical() const { return canonical_cyclic(letters_); }

Word canonical_cyclic(std::span<const Letter> letters) {
  Word best(letters.begin(), letters.end());
  const Word inv = inverse(letters);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    Word r = rotate(letters, i);
    if (word_less(r, best)) best = std::move(r);
    Word ri = rotate(inv, i);
    if (word_less(ri, best)) best = std::move(ri);
  }
  return best;
}

CurveWord CurveWord::inverted() const { return CurveWord(sig_, inverse(letters_), Trusted{}); }

std::vector<long> homology_class(const CurveWord& word) {
  std::vector<long> h(static_cast<std::size_t>(word.sig().homology_rank()), 0);
  for (Letter l : word.letters()) h[static_cast<std::size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
  return h;
}

int power_exponent(std::span<const Letter> w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = (w[i] == w[i - d]);
    if (periodic) return static_cast<int>(n / d);
  }
  return 1;
}

bool is_proper_power(const CurveWord& word) { return power_exponent(word.letters()) > 1; }

std::vector<CurveWord> enumerate_words(SurfaceSig sig, int max_len, const EnumerateOptions& options) {
  if (max_len < 1) fail(ErrorCode::InvalidArgument, "max_len must be >= 1");
  std::vector<Letter> alphabet;
  for (int g = 1; g <= sig.rank(); ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }
  std::sort(alphabet.begin(), alphabet.end(), letter_less);

  std::vector<CurveWord> out;
  Word w;
  // Depth-first generation visits reduced words of a fixed length in
  // lexicographic order.
  auto visit = [&](auto&& self, int target) -> void {
    if (static_cast<int>(w.size()) == target) {
      if (target > 1 && w.front() == -w.back()) return;
      if (canonical_cyclic(w) != w) return;
      if (!options.include_powers && power_exponent(w) > 1) return;
      std::optional<CurveWord> cw;
      try {
        cw = cyclic_reduce(sig, w);
      } catch (const CurveLabError& e) {
        if (e.code() == ErrorCode::EmptyAfterReduction) return;
        throw;
      }
      if (cw->letters() != w) return;
      if (out.size() >= options.cap) {
        fail(ErrorCode::BudgetExceeded, "word enumeration passed cap " + std::to_string(options.cap));
      }
      out.push_back(std::move(*cw));
      return;
    }
    for (Letter l : alphabet) {
      if (!w.empty() && w.back() == -l) continue;
      w.push_back(l);
      self(self, target);
      w.pop_back();
    }
  };
  for (int len = 1; len <= max_len; ++len) visit(visit, len);
  return out;
}

// --- multicurves ------------------------------------------------------------

Multicurve Multicurve::make(std::vector<CurveWord> components, Aggregator aggregator) {
  if (components.empty()) fail(ErrorCode::InvalidArgument, "multicurve needs at least one component");
  for (const auto& c : components) {
    if (!(c.sig() == components.front().sig())) fail(ErrorCode::InvalidArgument, "multicurve components on different surfaces");
  }
  return Multicurve{std::move(components), aggregator};
}

std::string Multicurve::str() const {
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) s += ",";
    s += c.str();
  }
  return s;
}

bool Multicurve::has_repeats() const {
  std::set<Word> seen;
  for (const auto& c : components) {
    if (!seen.insert(c.canonical()).second) return true;
  }
  return false;
}

// --- slopes ------------------------------------------------------------------

Slope Slope::make(long p, long q) {
  if (std::gcd(std::labs(p), std::labs(q)) != 1) {
    fail(ErrorCode::InvalidArgument, "slope " + std::to_string(p) + "/" + std::to_string(q) + " is not primitive");
  }
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope{p, q};
}

Slope Slope::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) fail(ErrorCode::ParseError, "slope must be 'p/q', got '" + std::string(text) + "'");
  return make(parse_long(text.substr(0, slash), "slope"), parse_long(text.substr(slash + 1), "slope"));
}

std::string Slope::str() const { return std::to_string(p) + "/" + std::to_string(q); }

CurveWord word_of_slope(const Slope& s) {
  const SurfaceSig sig = SurfaceSig::make(1, 1);
  const long p = std::labs(s.p);
  const long q = s.q;
  const long n = p + q;
  const Letter a = s.p < 0 ? -1 : 1;
  Word w;
  w.reserve(static_cast<std::size_t>(n));
  for (long i = 1; i <= n; ++i) {
    w.push_back((i * q) / n > ((i - 1) * q) / n ? 2 : a);
  }
  return CurveWord(sig, w);
}

Slope slope_of_word(const CurveWord& word) {
  if (!(word.sig() == SurfaceSig::make(1, 1))) fail(ErrorCode::WrongSurface, "slopes exist only on 1,1");
  // Primitive classes of F2 are fixed by their homology class (Nielsen), and
  // the nonperipheral simple curves are exactly the primitive classes.
  const auto h = homology_class(word);
  if (std::gcd(h[0], h[1]) == 1) {
    const Slope s = Slope::make(h[0], h[1]);
    if (word_of_slope(s).canonical() == word.canonical()) return s;
  }
  fail(ErrorCode::NotSimple, "word '" + word.str() + "' is not a simple closed curve");
}

// --- pants decompositions ----------------------------------------------------

std::vector<int> DualGraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertices), 0);
  for (const auto& [u, v] : edges) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  for (std::size_t i = 0; i < cusp_half_edges.size() && i < deg.size(); ++i) deg[i] += cusp_half_edges[i];
  return deg;
}

bool DualGraph::trivalent() const {
  const auto deg = degrees();
  return std::all_of(deg.begin(), deg.end(), [](int d) { return d == 3; });
}

std::string dual_graph_key(const DualGraph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.vertices));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::vector<std::pair<int, int>> e;
    for (auto [u, v] : g.edges) {
      int pu = perm[static_cast<std::size_t>(u)];
      int pv = perm[static_cast<std::size_t>(v)];
      e.emplace_back(std::min(pu, pv), std::max(pu, pv));
    }
    std::sort(e.begin(), e.end());
    std::vector<int> cusps(static_cast<std::size_t>(g.vertices), 0);
    for (int i = 0; i < g.vertices; ++i) {
      if (static_cast<std::size_t>(i) < g.cusp_half_edges.size()) {
        cusps[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = g.cusp_half_edges[static_cast<std::size_t>(i)];
      }
    }
    std::string key;
    for (auto [u, v] : e) key += std::to_string(u) + "-" + std::to_string(v) + ";";
    key += "|";
    for (int c : cusps) key += std::to_string(c) + ";";
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

int count_dual_graph_types(SurfaceSig sig) {
  const int vertices = -sig.euler();
  const int edge_count = sig.complexity();
  std::vector<std::pair<int, int>> slots;
  for (int u = 0; u < vertices; ++u) {
    for (int v = u; v < vertices; ++v) slots.emplace_back(u, v);
  }
  std::set<std::string> keys;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> cusps(static_cast<std::size_t>(vertices), 0);

  auto connected = [&](const DualGraph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.vertices));
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
      while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)];
      return x;
    };
    for (auto [u, v] : g.edges) comp[static_cast<std::size_t>(find(u))] = find(v);
    for (int i = 0; i < g.vertices; ++i) {
      if (find(i) != find(0)) return false;
    }
    return true;
  };

  auto place_cusps = [&](auto&& self, int vertex, int remaining) -> void {
    if (vertex == vertices) {
      if (remaining != 0) return;
      DualGraph g{vertices, edges, cusps};
      if (g.trivalent() && connected(g)) keys.insert(dual_graph_key(g));
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      cusps[static_cast<std::size_t>(vertex)] = c;
      self(self, vertex + 1, remaining - c);
    }
    cusps[static_cast<std::size_t>(vertex)] = 0;
  };
  auto place_edges = [&](auto&& self, std::size_t from, int remaining) -> void {
    if (remaining == 0) {
      place_cusps(place_cusps, 0, sig.cusps());
      return;
    }
    for (std::size_t s = from; s < slots.size(); ++s) {
      edges.push_back(slots[s]);
      self(self, s, remaining - 1);
      edges.pop_back();
    }
  };
  place_edges(place_edges, 0, edge_count);
  return static_cast<int>(keys.size());
}

// --- mapping classes -------------------------------------------------------------

namespace {

Word w(std::string_view s) {
  Word out;
  for (char c : s) out.push_back(parse_letter(c));
  return out;
}

MoveSpec move(std::string name, std::vector<std::string_view> images, std::vector<std::string_view> inverse_images) {
  MoveSpec m{std::move(name), {}, {}};
  for (auto s : images) m.images.push_back(w(s));
  for (auto s : inverse_images) m.inverse_images.push_back(w(s));
  return m;
}

}  // namespace

const std::vector<MoveSpec>& move_table(const SurfaceSig& sig) {
  // Generator images, one entry per free generator. On (1,1) the moves act on
  // slopes by T: (p,q) -> (p,p+q) and U: (p,q) -> (p+q,q). On (2,0) the five
  // moves are Dehn twists along the chain a, b, e, d, c with e = bABc.
  static const std::vector<MoveSpec> pants_moves{
      move("s1", {"abA", "a"}, {"b", "Bab"}),
      move("s2", {"a", "AB"}, {"a", "BA"}),
  };
  static const std::vector<MoveSpec> torus_moves{
      move("T", {"ab", "b"}, {"aB", "b"}),
      move("U", {"a", "ab"}, {"a", "Ab"}),
  };
  static const std::vector<MoveSpec> sphere_moves{
      move("s1", {"abA", "a", "c"}, {"b", "Bab", "c"}),
      move("s2", {"a", "bcB", "b"}, {"a", "c", "Cbc"}),
  };
  static const std::vector<MoveSpec> genus2_moves{
      move("Ta", {"a", "ba", "c", "d"}, {"a", "bA", "c", "d"}),
      move("Tb", {"aB", "b", "c", "d"}, {"ab", "b", "c", "d"}),
      move("Tc", {"a", "b", "c", "dc"}, {"a", "b", "c", "dC"}),
      move("Td", {"a", "b", "cD", "d"}, {"a", "b", "cd", "d"}),
      move("Te", {"bABcaCbaB", "bCbaB", "c", "bABcd"}, {"CbaBabABc", "bbABc", "c", "CbaBd"}),
  };
  if (sig.genus() == 0 && sig.cusps() == 3) return pants_moves;
  if (sig.genus() == 1) return torus_moves;
  if (sig.genus() == 0) return sphere_moves;
  return genus2_moves;
}

MappingClassWord MappingClassWord::parse(SurfaceSig sig, std::string_view text) {
  MappingClassWord out{sig, {}};
  const auto& table = move_table(sig);
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
    pos = end + 1;
    if (tok.empty() || tok == "id") continue;
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok.remove_suffix(3);
    }
    auto it = std::find_if(table.begin(), table.end(), [&](const MoveSpec& m) { return m.name == tok; });
    if (it == table.end()) fail(ErrorCode::ParseError, "unknown move '" + std::string(tok) + "'");
    const int idx = static_cast<int>(it - table.begin()) + 1;
    out.moves.push_back(inv ? -idx : idx);
  }
  return out;
}

std::vector<std::string> MappingClassWord::move_names() const {
  const auto& table = move_table(sig);
  std::vector<std::string> names;
  for (int m : moves) {
    std::string n = table[static_cast<std::size_t>(std::abs(m) - 1)].name;
    if (m < 0) n += "^-1";
    names.push_back(std::move(n));
  }
  return names;
}

std::string MappingClassWord::str() const {
  if (moves.empty()) return "id";
  std::string s;
  for (const auto& n : move_names()) {
    if (!s.empty()) s += ",";
    s += n;
  }
  return s;
}

MappingClassWord MappingClassWord::then(int move) const {
  MappingClassWord out{sig, {}};
  out.moves.reserve(moves.size() + 1);
  out.moves.push_back(move);
  out.moves.insert(out.moves.end(), moves.begin(), moves.end());
  return out;
}

Word apply_to_element(const MappingClassWord& mcw, std::span<const Letter> word) {
  const auto& table = move_table(mcw.sig);
  Word cur(word.begin(), word.end());
  for (auto it = mcw.moves.rbegin(); it != mcw.moves.rend(); ++it) {
    const int m = *it;
    if (m == 0 || std::abs(m) > static_cast<int>(table.size())) fail(ErrorCode::InvalidArgument, "move index out of range");
    const MoveSpec& spec = table[static_cast<std::size_t>(std::abs(m) - 1)];
    const auto& images = m > 0 ? spec.images : spec.inverse_images;
    Word next;
    for (Letter l : cur) {
      const Word& img = images[static_cast<std::size_t>(std::abs(l) - 1)];
      if (l > 0) {
        next.insert(next.end(), img.begin(), img.end());
      } else {
        const Word inv = inverse(img);
        next.insert(next.end(), inv.begin(), inv.end());
      }
    }
    cur = free_reduce(next);
  }
  return cur;
}

CurveWord apply_mapping_class(const MappingClassWord& mcw, const CurveWord& curve) {
  if (!(mcw.sig == curve.sig())) fail(ErrorCode::WrongSurface, "mapping class and curve on different surfaces");
  return cyclic_reduce(curve.sig(), apply_to_element(mcw, curve.letters()));
}

Multicurve apply_mapping_class(const MappingClassWord& mcw, const Multicurve& m) {
  Multicurve out{{}, m.aggregator};
  out.components.reserve(m.components.size());
  for (const auto& c : m.components) out.components.push_back(apply_mapping_class(mcw, c));
  return out;
}

Slope apply_to_slope(const MappingClassWord& mcw, const Slope& s) {
  if (!(mcw.sig == SurfaceSig::make(1, 1))) fail(ErrorCode::WrongSurface, "slope action exists only on 1,1");
  long p = s.p;
  long q = s.q;
  for (auto it = mcw.moves.rbegin(); it != mcw.moves.rend(); ++it) {
    switch (*it) {
      case 1: q = p + q; break;
      case -1: q = q - p; break;
      case 2: p = p + q; break;
      case -2: p = p - q; break;
      default: fail(ErrorCode::InvalidArgument, "move index out of range");
    }
  }
  return Slope::make(p, q);
}

}  // namespace curvelab
