#include "cli.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "curvelab/experiments.hpp"
#include "curvelab/hyperbolic.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/search.hpp"
#include "curvelab/serialize.hpp"
#include "curvelab/topology.hpp"

namespace curvelab::cli {

using json = nlohmann::ordered_json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Uncertified:
    case ErrorCode::TangentAxes:
    case ErrorCode::SearchExhausted:
      return kUncertain;
    case ErrorCode::NumericDegeneracy:
      return kDegenerate;
    default:
      return kInputError;
  }
}

namespace {

struct Options {
  std::string surface;
  std::vector<std::string> words;
  std::string multicurve;
  std::string family;
  std::string pants_type;
  std::string aggregate = "sum";
  std::string objective = "intersection";
  std::string lengths, twists;
  int depth = 6;
  int radius = 6;
  int budget = 6;
  std::uint64_t seed = 0;
  int t_steps = 8;
  double epsilon = 0.5;
  int count = 10;
  std::string format = "json";
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::vector<double> parse_reals(const std::string& text, const char* flag) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const auto& tok : split(text, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size()) {
      fail(ErrorCode::ParseError, std::string("bad number '") + tok + "' in " + flag);
    }
    out.push_back(v);
  }
  return out;
}

std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return trim(s);
}

SurfaceSig surface_of(const Options& o) {
  if (o.surface.empty()) fail(ErrorCode::InvalidArgument, "--surface is required");
  return SurfaceSig::parse(o.surface);
}

// Components are comma separated; either all slopes p/q (surface 1,1) or
// all words.
Multicurve parse_multicurve(const SurfaceSig& sig, const std::string& text, Aggregator agg, std::ostream& err) {
  const auto toks = split(text, ',');
  std::vector<CurveWord> comps;
  int slopes = 0;
  for (const auto& tok : toks) {
    if (tok.empty()) fail(ErrorCode::ParseError, "empty component in '" + text + "'");
    if (tok.find('/') != std::string::npos) {
      if (sig.genus() != 1 || sig.cusps() != 1) {
        fail(ErrorCode::WrongSurface, "slope '" + tok + "' needs surface 1,1");
      }
      comps.push_back(word_of_slope(Slope::parse(tok)));
      ++slopes;
    } else {
      try {
        comps.push_back(CurveWord::parse(sig, tok));
      } catch (const CurveLabError& e) {
        std::string msg = e.what();
        msg.erase(0, to_string(e.code()).size() + 2);
        throw CurveLabError(e.code(), msg + " in word '" + tok + "'");
      }
    }
  }
  if (slopes != 0 && slopes != static_cast<int>(toks.size())) {
    fail(ErrorCode::ParseError, "mixed slope and word components in '" + text + "'");
  }
  for (const auto& c : comps) {
    if (is_proper_power(c)) err << "curvelab: warning: component " << c.str() << " is a proper power\n";
  }
  auto m = Multicurve::make(std::move(comps), agg);
  if (m.has_repeats()) err << "curvelab: warning: '" << text << "' repeats a component\n";
  return m;
}

Aggregator aggregator_of(const Options& o) { return o.aggregate == "max" ? Aggregator::Max : Aggregator::Sum; }

Multicurve multicurve_of(const SurfaceSig& sig, const Options& o, std::ostream& err) {
  if (!o.multicurve.empty()) {
    if (!o.words.empty()) fail(ErrorCode::InvalidArgument, "give --word or --multicurve, not both");
    return parse_multicurve(sig, o.multicurve, aggregator_of(o), err);
  }
  if (o.words.empty()) fail(ErrorCode::InvalidArgument, "--word or --multicurve is required");
  std::string joined;
  for (const auto& w : o.words) joined += (joined.empty() ? "" : ",") + w;
  return parse_multicurve(sig, joined, aggregator_of(o), err);
}

PantsDecomposition pants_of(const SurfaceSig& sig, const Options& o) {
  if (!o.pants_type.empty()) return pants_type(sig, o.pants_type);
  return enumerate_pants_types(sig).front();
}

FNPoint point_of(const SurfaceSig& sig, const Options& o) {
  const auto P = pants_of(sig, o);
  if (o.lengths.empty() && o.twists.empty()) return reference_point(P);
  auto lengths = parse_reals(o.lengths, "--lengths");
  auto twists = parse_reals(o.twists, "--twists");
  if (twists.empty()) twists.assign(lengths.size(), 0.0);
  return FNPoint::make(P, std::move(lengths), std::move(twists));
}

// On (0,3) --lengths are the three cuff lengths (0 = cusp).
Holonomy holonomy_of(const SurfaceSig& sig, const Options& o) {
  if (sig.complexity() == 0 && !o.lengths.empty()) {
    const auto l = parse_reals(o.lengths, "--lengths");
    if (l.size() != 3) fail(ErrorCode::InvalidArgument, "--lengths on 0,3 takes three cuff lengths");
    return pants_holonomy(PantsCuffs::make(l[0], l[1], l[2]));
  }
  return build_holonomy(point_of(sig, o));
}

SearchOptions search_of(const SurfaceSig& sig, const Options& o) {
  SearchOptions s;
  s.radius = std::min(default_radius(sig), o.radius);
  return s;
}

json point_json(const FNPoint& X) {
  return json{{"type", X.decomposition.tag}, {"lengths", X.lengths}, {"twists", X.twists}};
}

json witness_json(const MappingClassWord& w) { return json{{"moves", w.move_names()}, {"word", w.str()}}; }

struct Emit {
  json doc;
  std::string csv;  // used instead of doc when nonempty
  int code = kOk;
};

Emit cmd_length(const Options& o, std::ostream& err) {
  const auto sig = surface_of(o);
  const auto m = multicurve_of(sig, o, err);
  const auto h = holonomy_of(sig, o);
  json comps = json::array();
  for (const auto& c : m.components) comps.push_back({{"word", c.str()}, {"length", curve_length(h, c)}});
  Emit e;
  e.doc["multicurve"] = m.str();
  e.doc["repeated_components"] = m.has_repeats();
  e.doc["aggregate"] = o.aggregate;
  e.doc["components"] = comps;
  e.doc["length"] = multicurve_length(h, m);
  return e;
}

Emit cmd_systole(const Options& o, std::ostream&) {
  const auto sig = surface_of(o);
  const auto h = holonomy_of(sig, o);
  const auto s = systole_estimate(h, o.budget);
  Emit e;
  e.doc["budget"] = o.budget;
  e.doc["word"] = s.word.str();
  e.doc["length"] = s.length;
  return e;
}

Emit cmd_intersect(const Options& o, std::ostream& err) {
  const auto sig = surface_of(o);
  const auto m = multicurve_of(sig, o, err);
  if (m.components.size() != 2) fail(ErrorCode::InvalidArgument, "intersect takes exactly two curves");
  Emit e;
  e.doc["a"] = m.components[0].str();
  e.doc["b"] = m.components[1].str();
  if (o.multicurve.find('/') != std::string::npos ||
      (!o.words.empty() && o.words[0].find('/') != std::string::npos)) {
    const long n = slope_intersection(slope_of_word(m.components[0]), slope_of_word(m.components[1]));
    e.doc["count"] = n;
    e.doc["certified"] = true;
    e.doc["radius"] = 0;
    return e;
  }
  const auto h = holonomy_of(sig, o);
  const int r0 = std::min(default_radius(sig), o.radius);
  const auto r = certified_intersection(h, m.components[0], m.components[1], r0, o.radius);
  e.doc["count"] = r.count;
  e.doc["certified"] = r.certified;
  e.doc["radius"] = r.radius_used;
  if (!r.certified) e.code = kUncertain;
  return e;
}

Emit cmd_orbit_min(const Options& o, std::ostream& err) {
  const auto sig = surface_of(o);
  const auto m = multicurve_of(sig, o, err);
  const auto h = holonomy_of(sig, o);
  const auto opts = search_of(sig, o);
  OrbitSearchReport rep{0, MappingClassWord::identity(sig)};
  Emit e;
  e.doc["objective"] = o.objective;
  if (o.objective == "length") {
    rep = orbit_min_length(h, m, o.depth, opts);
  } else {
    const auto P = pants_of(sig, o);
    e.doc["pants_type"] = P.tag;
    rep = orbit_min_intersection(h, P, m, o.depth, opts);
  }
  e.doc["multicurve"] = m.str();
  e.doc["repeated_components"] = m.has_repeats();
  e.doc["best_value"] = rep.best_value;
  e.doc["image"] = apply_mapping_class(rep.witness, m).str();
  e.doc["witness"] = witness_json(rep.witness);
  e.doc["depth_reached"] = rep.depth_reached;
  e.doc["exhaustive"] = rep.exhaustive;
  e.doc["certified"] = rep.certified;
  e.doc["uncertified_states"] = rep.uncertified_states;
  e.doc["states"] = rep.states;
  if (!rep.certified) e.code = kUncertain;
  return e;
}

Emit cmd_criterion(const Options& o, std::ostream& err) {
  const auto sig = surface_of(o);
  std::vector<Multicurve> family;
  if (!o.family.empty()) {
    for (const auto& part : split(o.family, ';')) family.push_back(parse_multicurve(sig, part, aggregator_of(o), err));
  } else {
    family.push_back(multicurve_of(sig, o, err));
  }
  const auto v = criterion_check(sig, family, o.depth, search_of(sig, o));
  Emit e;
  json fam = json::array();
  for (const auto& m : family) fam.push_back(m.str());
  e.doc["family"] = fam;
  e.doc["mapping_classes"] = "orientation-preserving";
  e.doc["verdict"] = to_string(v.verdict);
  json per = json::array();
  for (const auto& r : v.per_pants_type) {
    per.push_back({{"tag", r.tag},
                   {"min_intersection", r.min_intersection},
                   {"certified", r.certified},
                   {"exhaustive", r.exhaustive},
                   {"witness_moves", r.witness.move_names()},
                   {"member", r.member},
                   {"depth_reached", r.depth_reached}});
  }
  e.doc["per_pants_type"] = per;
  if (v.verdict == Verdict::Inconclusive) e.code = kUncertain;
  return e;
}

Emit cmd_pinch_probe(const Options& o, std::ostream& err, const std::string& header) {
  const auto sig = surface_of(o);
  const auto m = multicurve_of(sig, o, err);
  const auto P = pants_of(sig, o);
  ProbeOptions po;
  po.search = search_of(sig, o);
  const auto s = boundedness_probe(sig, m, P, geometric_grid(o.t_steps), o.depth, po);
  Emit e;
  if (s.classification == ProbeClass::Undetermined) e.code = kUncertain;
  if (!s.note.empty()) err << "curvelab: note: " << s.note << "\n";
  if (o.format == "csv") {
    e.csv = probe_csv(s, header + " classification=" + to_string(s.classification));
    return e;
  }
  e.doc["multicurve"] = m.str();
  e.doc["repeated_components"] = m.has_repeats();
  e.doc["pants_type"] = P.tag;
  e.doc["base"] = point_json(s.base);
  e.doc["i_min"] = s.i_min;
  e.doc["certified"] = s.certified;
  json rows = json::array();
  for (std::size_t k = 0; k < s.t_values.size(); ++k) {
    rows.push_back({{"t", s.t_values[k]}, {"min_length", s.min_lengths[k]}, {"lower_bound", s.lower_bounds[k]}});
  }
  e.doc["series"] = rows;
  e.doc["classification"] = to_string(s.classification);
  e.doc["note"] = s.note;
  return e;
}

Emit cmd_bers(const Options& o, std::ostream&) {
  const auto sig = surface_of(o);
  const auto b = bers_greedy(holonomy_of(sig, o), o.budget);
  Emit e;
  e.doc["pants_type"] = b.decomposition.tag;
  json curves = json::array();
  for (std::size_t i = 0; i < b.decomposition.curves.size(); ++i) {
    curves.push_back({{"word", b.decomposition.curves[i].str()}, {"length", b.lengths[i]}});
  }
  e.doc["curves"] = curves;
  e.doc["max_length"] = b.max_length;
  e.doc["sum_length"] = b.sum_length;
  return e;
}

Emit cmd_homology_basis(const Options& o, std::ostream&) {
  const auto sig = surface_of(o);
  const auto b = homology_basis_search(holonomy_of(sig, o), o.budget);
  const auto problem = verify_homology_basis(b.curves);
  static const char* names[] = {"alpha1", "beta1", "alpha2", "beta2"};
  Emit e;
  json curves = json::array();
  for (std::size_t i = 0; i < b.curves.size(); ++i) {
    curves.push_back({{"name", names[i % 4]}, {"word", b.curves[i].str()}, {"length", b.lengths[i]}});
  }
  e.doc["curves"] = curves;
  e.doc["max_length"] = b.max_length;
  e.doc["verified"] = problem.empty();
  e.doc["problem"] = problem;
  if (!problem.empty()) e.code = kUncertain;
  return e;
}

Emit cmd_thick_sample(const Options& o, std::ostream&, const std::string& header) {
  const auto sig = surface_of(o);
  const auto s = thick_sample(sig, o.epsilon, o.count, o.seed, o.budget);
  Emit e;
  if (o.format == "csv") {
    e.csv = "# " + header + "\npoint,type,curve,length,twist\n";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& X = s.points[i];
      for (std::size_t k = 0; k < X.lengths.size(); ++k) {
        e.csv += std::to_string(i) + "," + X.decomposition.tag + "," + std::to_string(k) + "," +
                 format_real(X.lengths[k]) + "," + format_real(X.twists[k]) + "\n";
      }
    }
    return e;
  }
  e.doc["epsilon"] = s.epsilon;
  e.doc["budget"] = s.word_budget;
  e.doc["rejected"] = s.rejected;
  json pts = json::array();
  for (const auto& X : s.points) pts.push_back(point_json(X));
  e.doc["points"] = pts;
  return e;
}

Emit cmd_empirical_k(const Options& o, std::ostream& err) {
  const auto sig = surface_of(o);
  const auto m = multicurve_of(sig, o, err);
  const auto s = thick_sample(sig, o.epsilon, o.count, o.seed, o.budget);
  Emit e;
  e.doc["multicurve"] = m.str();
  e.doc["repeated_components"] = m.has_repeats();
  e.doc["epsilon"] = o.epsilon;
  e.doc["count"] = o.count;
  e.doc["rejected"] = s.rejected;
  e.doc["K_lower_bound"] = empirical_K(s, m, o.depth, search_of(sig, o));
  return e;
}

// ---- selftest

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

Check check_fig8() {
  const auto sig = SurfaceSig::make(0, 3);
  const double l = curve_length(build_holonomy(reference_point(pants_type(sig, "pants"))), CurveWord::parse(sig, "aB"));
  return {"figure-eight on the thrice-punctured sphere", std::abs(l - 2 * std::acosh(3.0)) < 1e-9, num(l)};
}

Check check_modular() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto h = build_holonomy(modular_torus_point());
  const double want = 2 * std::acosh(1.5);
  double worst = 0;
  for (const char* w : {"a", "b", "ab"}) worst = std::max(worst, std::abs(curve_length(h, CurveWord::parse(sig, w)) - want));
  const auto s = systole_estimate(h, 6);
  worst = std::max(worst, std::abs(s.length - want));
  return {"modular torus systole", worst < 1e-9, "max error " + num(worst)};
}

Check check_trace_identity() {
  const auto sig = SurfaceSig::make(2, 0);
  const auto h = build_holonomy(reference_point(pants_type(sig, "theta")));
  const auto pool = enumerate_words(sig, 3);
  std::mt19937_64 rng(1);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const auto& u = pool[rng() % pool.size()];
    const auto& v = pool[rng() % pool.size()];
    const double lhs = h.trace(concat(u.letters(), v.letters())) + h.trace(concat(u.letters(), inverse(v.letters())));
    const double rhs = h.trace(u.letters()) * h.trace(v.letters());
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  return {"trace identity tr(uv)+tr(uV)=tr(u)tr(v)", worst < 1e-9, "max relative error " + num(worst)};
}

Check check_relator() {
  const auto sig = SurfaceSig::make(2, 0);
  double worst = 0;
  for (const auto& P : enumerate_pants_types(sig)) {
    const auto M = build_holonomy(reference_point(P)).image(surface_relator(sig));
    worst = std::max({worst, std::abs(M.a - 1), std::abs(M.b), std::abs(M.c), std::abs(M.d - 1)});
  }
  return {"genus-two holonomy satisfies the relator", worst < 1e-8, "max entry error " + num(worst)};
}

Check check_slopes() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto& h = reference_holonomy(sig);
  std::vector<Slope> slopes;
  for (long p = -3; p <= 3; ++p) {
    for (long q = 0; q <= 3; ++q) {
      if (std::gcd(p, q) != 1 || (q == 0 && p != 1)) continue;
      slopes.push_back(Slope::make(p, q));
    }
  }
  int compared = 0, bad = 0, skipped = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    for (std::size_t j = i + 1; j < slopes.size(); ++j) {
      try {
        const auto r = certified_intersection(h, word_of_slope(slopes[i]), word_of_slope(slopes[j]), 4, 6);
        if (!r.certified) {
          ++skipped;
          continue;
        }
        ++compared;
        if (r.count != slope_intersection(slopes[i], slopes[j])) ++bad;
      } catch (const CurveLabError& e) {
        if (e.code() != ErrorCode::TangentAxes) throw;
        ++skipped;
      }
    }
  }
  return {"slope intersections match |ps-qr|", bad == 0 && compared > 0,
          std::to_string(compared) + " compared, " + std::to_string(bad) + " wrong, " + std::to_string(skipped) +
              " tangent or uncertified"};
}

Check check_pants_table() {
  std::string detail;
  bool ok = true;
  for (const auto& [g, n] : {std::pair{0, 3}, {1, 1}, {0, 4}, {2, 0}}) {
    const auto sig = SurfaceSig::make(g, n);
    const int table = static_cast<int>(enumerate_pants_types(sig).size());
    const int graphs = count_dual_graph_types(sig);
    ok = ok && table == graphs;
    detail += sig.str() + ":" + std::to_string(table) + "/" + std::to_string(graphs) + " ";
  }
  return {"pants types match dual graph enumeration", ok, trim(detail)};
}

Check check_criterion() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto pair = Multicurve::make({word_of_slope(Slope::make(1, 0)), word_of_slope(Slope::make(0, 1))});
  const auto single = Multicurve::make({word_of_slope(Slope::make(5, 7))});
  const auto v1 = criterion_check(sig, {pair}, 6);
  const auto v2 = criterion_check(sig, {single}, 6);
  return {"torus criterion: filling pair unbounded, single slope bounded",
          v1.verdict == Verdict::Unbounded && v2.verdict == Verdict::Bounded,
          to_string(v1.verdict) + ", " + to_string(v2.verdict)};
}

Check check_sampling() {
  const auto sig = SurfaceSig::make(1, 1);
  const auto a = thick_sample(sig, 0.5, 5, 7);
  const auto b = thick_sample(sig, 0.5, 5, 7);
  bool same = a.points.size() == b.points.size();
  for (std::size_t i = 0; same && i < a.points.size(); ++i) {
    same = fnpoint_record(a.points[i]) == fnpoint_record(b.points[i]);
  }
  return {"thick sampling is deterministic in the seed", same, std::to_string(a.points.size()) + " points"};
}

Check check_roundtrip() {
  const auto X = reference_point(pants_type(SurfaceSig::make(2, 0), "dumbbell"));
  const auto Y = parse_fnpoint_record(fnpoint_record(X));
  return {"FN record round trip", Y.lengths == X.lengths && Y.twists == X.twists &&
                                     Y.decomposition.tag == X.decomposition.tag,
          X.decomposition.tag};
}

Emit cmd_selftest(const Options&, std::ostream&) {
  using Fn = Check (*)();
  const Fn checks[] = {check_fig8,       check_modular,  check_trace_identity, check_relator, check_slopes,
                       check_pants_table, check_criterion, check_sampling,       check_roundtrip};
  json rows = json::array();
  int failed = 0;
  for (const auto f : checks) {
    Check c;
    try {
      c = f();
    } catch (const std::exception& ex) {
      c.name = "check threw";
      c.detail = ex.what();
    }
    if (!c.pass) ++failed;
    rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  Emit e;
  e.doc["checks"] = rows;
  e.doc["passed"] = static_cast<int>(rows.size()) - failed;
  e.doc["failed"] = failed;
  e.code = failed == 0 ? kOk : kFailed;
  return e;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lengths, intersections and mapping class orbits of curves on small hyperbolic surfaces", "curvelab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CURVELAB_VERSION);
  Options o;

  const auto add_surface = [&](CLI::App* s) { s->add_option("--surface", o.surface, "g,n")->required(); };
  const auto add_curves = [&](CLI::App* s) {
    s->add_option("--word", o.words, "curve word, repeatable; p/q slopes on 1,1");
    s->add_option("--multicurve", o.multicurve, "comma separated components");
    s->add_option("--aggregate", o.aggregate, "multicurve length")->check(CLI::IsMember({"sum", "max"}));
  };
  const auto add_point = [&](CLI::App* s) {
    s->add_option("--pants-type", o.pants_type, "pants decomposition tag");
    s->add_option("--lengths", o.lengths, "comma separated decomposition lengths");
    s->add_option("--twists", o.twists, "comma separated twists");
  };
  const auto add_depth = [&](CLI::App* s) {
    s->add_option("--depth", o.depth, "BFS depth")->check(CLI::Range(0, 64));
    s->add_option("--radius", o.radius, "largest lift radius")->check(CLI::Range(1, 12));
  };
  const auto add_budget = [&](CLI::App* s) {
    s->add_option("--budget", o.budget, "word length budget")->check(CLI::Range(1, 12));
  };
  const auto add_sampling = [&](CLI::App* s) {
    s->add_option("--epsilon", o.epsilon, "systole floor")->check(CLI::PositiveNumber);
    s->add_option("--count", o.count, "points")->check(CLI::Range(1, 100000));
    s->add_option("--seed", o.seed, "mt19937_64 seed");
  };
  const auto add_format = [&](CLI::App* s) {
    s->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  };

  auto* length = app.add_subcommand("length", "hyperbolic length of a curve or multicurve");
  add_surface(length), add_curves(length), add_point(length);
  auto* systole = app.add_subcommand("systole", "shortest curve within a word budget");
  add_surface(systole), add_point(systole), add_budget(systole);
  auto* intersect = app.add_subcommand("intersect", "geometric intersection of two curves");
  add_surface(intersect), add_curves(intersect), add_point(intersect), add_depth(intersect);
  auto* orbit = app.add_subcommand("orbit-min", "minimize over a mapping class orbit");
  add_surface(orbit), add_curves(orbit), add_point(orbit), add_depth(orbit);
  orbit->add_option("--objective", o.objective)->check(CLI::IsMember({"intersection", "length"}));
  auto* criterion = app.add_subcommand("criterion", "length-boundedness verdict for a family");
  add_surface(criterion), add_curves(criterion), add_depth(criterion);
  criterion->add_option("--family", o.family, "multicurves separated by ';'");
  auto* probe = app.add_subcommand("pinch-probe", "orbit-min length while pinching a decomposition");
  add_surface(probe), add_curves(probe), add_depth(probe), add_format(probe);
  probe->add_option("--pants-type", o.pants_type, "pants decomposition tag");
  probe->add_option("--t-steps", o.t_steps, "grid size, t = 2^-k")->check(CLI::Range(2, 200));
  probe->add_option("--seed", o.seed, "recorded only");
  auto* bers = app.add_subcommand("bers", "greedy short pants decomposition");
  add_surface(bers), add_point(bers), add_budget(bers);
  auto* hbasis = app.add_subcommand("homology-basis", "short symplectic basis of simple curves");
  add_surface(hbasis), add_point(hbasis), add_budget(hbasis);
  auto* thick = app.add_subcommand("thick-sample", "random points of the thick part");
  add_surface(thick), add_budget(thick), add_sampling(thick), add_format(thick);
  auto* empk = app.add_subcommand("empirical-k", "max orbit-min length over a thick sample");
  add_surface(empk), add_curves(empk), add_budget(empk), add_sampling(empk), add_depth(empk);
  auto* selftest = app.add_subcommand("selftest", "invariant checks");

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && app.get_subcommand_no_throw(args[0]) == nullptr) {
    err << "curvelab: unknown subcommand '" << args[0] << "'\n";
    return kInputError;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << CURVELAB_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "curvelab: " << one_line(e.what()) << "\n";
    return kInputError;
  }

  std::string cmdline = "curvelab";
  for (const auto& a : args) cmdline += " " + a;
  const std::string header = "curvelab " CURVELAB_VERSION " seed=" + std::to_string(o.seed) + " input=" + cmdline;

  CLI::App* sub = app.get_subcommands().front();
  try {
    Emit e;
    if (sub == length) e = cmd_length(o, err);
    else if (sub == systole) e = cmd_systole(o, err);
    else if (sub == intersect) e = cmd_intersect(o, err);
    else if (sub == orbit) e = cmd_orbit_min(o, err);
    else if (sub == criterion) e = cmd_criterion(o, err);
    else if (sub == probe) e = cmd_pinch_probe(o, err, header);
    else if (sub == bers) e = cmd_bers(o, err);
    else if (sub == hbasis) e = cmd_homology_basis(o, err);
    else if (sub == thick) e = cmd_thick_sample(o, err, header);
    else if (sub == empk) e = cmd_empirical_k(o, err);
    else e = cmd_selftest(o, err);
    (void)selftest;

    if (!e.csv.empty()) {
      out << e.csv;
      return e.code;
    }
    json doc;
    doc["command"] = sub->get_name();
    if (sub != selftest) doc["surface"] = SurfaceSig::parse(o.surface).str();
    for (auto& [k, v] : e.doc.items()) doc[k] = v;
    doc["meta"] = {{"tool", "curvelab"}, {"version", CURVELAB_VERSION}, {"seed", o.seed}, {"argv", args}};
    out << doc.dump(2) << "\n";
    return e.code;
  } catch (const CurveLabError& e) {
    err << "curvelab: " << one_line(e.what()) << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "curvelab: internal error: " << one_line(e.what()) << "\n";
    return kFailed;
  }
}

}  // namespace curvelab::cli
