#include "aqua/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "aqua/parallel.hpp"
#include "aqua/random.hpp"

namespace aqua {

namespace {

constexpr std::uint64_t mc_stream = 0x6d632d6b61707061ULL;
constexpr std::uint64_t spine_stream = 0x7370696e65ULL;
constexpr std::uint64_t extra_stream = 0x6578747261ULL;
constexpr std::uint64_t adversary_stream = 0x6164760aULL;

constexpr double cabs(double x) { return x < 0 ? -x : x; }

// Single edge.
constexpr double edge_low(double x) { return 1.5 * x * x; }
constexpr double edge_high(double x) { return x - 0.5 * (1.0 - x) * (1.0 - x); }

// 3-path, end vertex: four cubic pieces on [0,1/3], [1/3,1/2], [1/2,2/3], [2/3,1].
constexpr double end_piece1(double x) { return 8.0 / 3.0 * x * x * x; }
constexpr double end_piece2(double x) {
  return ((-11.0 / 6.0 * x + 9.0 / 2.0) * x - 3.0 / 2.0) * x + 1.0 / 6.0;
}
constexpr double end_piece3(double x) {
  return ((-23.0 / 6.0 * x + 13.0 / 2.0) * x - 2.0) * x + 1.0 / 6.0;
}
constexpr double end_piece4_monomial(double x) {
  return ((2.0 / 3.0 * x - 5.0 / 2.0) * x + 4.0) * x - 7.0 / 6.0;
}
// Same cubic expanded around x = 1, so F(1) = 1 holds exactly.
constexpr double end_piece4(double x) {
  const double y = 1.0 - x;
  return 1.0 - ((2.0 / 3.0 * y + 0.5) * y + 1.0) * y;
}

static_assert(cabs(edge_low(0.5) - edge_high(0.5)) < 1e-12, "edge CDF discontinuous at 1/2");
static_assert(cabs(edge_low(0.0)) < 1e-15 && cabs(edge_high(1.0) - 1.0) < 1e-15);
static_assert(cabs(end_piece1(1.0 / 3.0) - end_piece2(1.0 / 3.0)) < 1e-12, "3-path CDF discontinuous at 1/3");
static_assert(cabs(end_piece2(0.5) - end_piece3(0.5)) < 1e-12, "3-path CDF discontinuous at 1/2");
static_assert(cabs(end_piece3(2.0 / 3.0) - end_piece4(2.0 / 3.0)) < 1e-12, "3-path CDF discontinuous at 2/3");
static_assert(end_piece4(1.0) == 1.0);
static_assert(cabs(end_piece4(0.7) - end_piece4_monomial(0.7)) < 1e-14 &&
              cabs(end_piece4(0.85) - end_piece4_monomial(0.85)) < 1e-14 &&
              cabs(end_piece4(1.0) - end_piece4_monomial(1.0)) < 1e-14);

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::out_of_range, "CDF argument outside [0, 1]");
}

double draw(const LevelRange& r, double u) { return r.lo == r.hi ? r.lo : r.lo + (r.hi - r.lo) * u; }

}  // namespace

ProfileLaw ProfileLaw::bounded(double c) {
  ProfileLaw law;
  law.kind = Kind::bounded;
  law.bound = c;
  return law;
}

ProfileLaw ProfileLaw::constant(double level) {
  ProfileLaw law;
  law.kind = Kind::constant;
  law.value = level;
  return law;
}

ProfileLaw ProfileLaw::per_vertex(std::vector<LevelRange> ranges) {
  ProfileLaw law;
  law.kind = Kind::per_vertex;
  law.ranges = std::move(ranges);
  return law;
}

LevelRange ProfileLaw::range_for(Vertex x) const {
  switch (kind) {
    case Kind::uniform01: return {0.0, 1.0};
    case Kind::bounded: return {0.0, bound};
    case Kind::constant: return {value, value};
    case Kind::per_vertex: return ranges.at(x);
  }
  return {0.0, 1.0};
}

const char* to_string(ProfileLaw::Kind kind) {
  switch (kind) {
    case ProfileLaw::Kind::uniform01: return "uniform01";
    case ProfileLaw::Kind::bounded: return "bounded";
    case ProfileLaw::Kind::constant: return "constant";
    case ProfileLaw::Kind::per_vertex: return "per-vertex";
  }
  return "uniform01";
}

void validate(const ProfileLaw& law, std::size_t n_vertices) {
  auto bad = [](const std::string& msg) { return Error(ErrorCode::invalid_spec, msg); };
  switch (law.kind) {
    case ProfileLaw::Kind::uniform01: return;
    case ProfileLaw::Kind::bounded:
      if (!(law.bound > 0.0 && law.bound <= 1.0)) throw bad("bounded law needs 0 < C <= 1");
      return;
    case ProfileLaw::Kind::constant:
      if (!(law.value >= 0.0 && law.value <= 1.0)) throw bad("constant level outside [0, 1]");
      return;
    case ProfileLaw::Kind::per_vertex:
      if (law.ranges.size() != n_vertices) throw bad("per-vertex law needs one range per vertex");
      for (const auto& r : law.ranges)
        if (!(r.lo >= 0.0 && r.lo <= r.hi && r.hi <= 1.0)) throw bad("per-vertex range outside [0, 1]");
      return;
  }
}

WaterProfile sample_profile(const Graph& g, const ProfileLaw& law, std::uint64_t seed) {
  validate(law, g.n_vertices());
  std::mt19937_64 rng(seed);
  std::vector<double> levels(g.n_vertices());
  for (Vertex x = 0; x < levels.size(); ++x) levels[x] = draw(law.range_for(x), uniform01(rng));
  return WaterProfile(std::move(levels));
}

WaterProfile sample_halfline_profile(const Graph& g, const ProfileLaw& law, std::uint64_t seed) {
  const FamilyMeta& meta = g.meta();
  if (meta.kind != Family::halfline)
    throw Error(ErrorCode::unsupported_structure, "half-line sampling needs a half-line graph");
  validate(law, g.n_vertices());
  auto unit = [](std::uint64_t s) { return static_cast<double>(mix64(s) >> 11) * 0x1.0p-53; };
  std::vector<double> levels(g.n_vertices());
  for (std::size_t j = 0; j < meta.spine.size(); ++j)
    levels[meta.spine[j]] = draw(law.range_for(meta.spine[j]), unit(derive_seed(seed, spine_stream, j)));
  for (std::size_t k = 0; k < meta.extras.size(); ++k)
    levels[meta.extras[k]] = draw(law.range_for(meta.extras[k]), unit(derive_seed(seed, extra_stream, k)));
  return WaterProfile(std::move(levels));
}

double cdf_edge(double x) {
  check_unit(x);
  return x <= 0.5 ? edge_low(x) : edge_high(x);
}

double cdf_path3_end(double x) {
  check_unit(x);
  if (x <= 1.0 / 3.0) return end_piece1(x);
  if (x <= 0.5) return end_piece2(x);
  if (x <= 2.0 / 3.0) return end_piece3(x);
  return end_piece4(x);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  if (samples_.empty()) return 0.0;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double EmpiricalCdf::left_limit(double x) const {
  if (samples_.empty()) return 0.0;
  auto it = std::lower_bound(samples_.begin(), samples_.end(), x);
  return static_cast<double>(it - samples_.begin()) / static_cast<double>(samples_.size());
}

double ks_distance(const EmpiricalCdf& emp, const std::function<double(double)>& ref) {
  const auto s = emp.samples();
  const double n = static_cast<double>(s.size());
  double sup = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    const double f = ref(s[i]);
    sup = std::max({sup, std::abs(static_cast<double>(i) / n - f), std::abs(static_cast<double>(j) / n - f)});
    i = j;
  }
  return sup;
}

double dkw_radius(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

KappaEvaluator exact_evaluator() {
  return [](const Graph& g, const WaterProfile& p, Vertex v) {
    auto value = closed_form_kappa(g, p, v);
    if (!value) throw Error(ErrorCode::unsupported_structure, "no closed form for this graph");
    return *value;
  };
}

KappaEvaluator search_evaluator(SearchSettings settings) {
  return [settings = std::move(settings)](const Graph& g, const WaterProfile& p, Vertex v) {
    return kappa_search(g, p, v, settings).lower;
  };
}

EmpiricalCdf mc_kappa_cdf(const Graph& g, Vertex v, const ProfileLaw& law,
                          const KappaEvaluator& evaluator, std::size_t trials, std::uint64_t seed,
                          std::size_t threads) {
  if (trials == 0) throw Error(ErrorCode::invalid_spec, "trials must be positive");
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown target vertex");
  validate(law, g.n_vertices());
  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    try {
      const WaterProfile p = sample_profile(g, law, derive_seed(seed, mc_stream, i));
      values[i] = evaluator(g, p, v);
    } catch (const Error& e) {
      throw Error(e.code(), "trial " + std::to_string(i) + ": " + e.what());
    }
  });
  return EmpiricalCdf(std::move(values));
}

namespace {

/// Position of v in the path order, and the ordered levels.
std::pair<std::size_t, std::vector<double>> along_path(const Graph& g, const WaterProfile& p, Vertex v) {
  if (!g.is_path()) throw Error(ErrorCode::unsupported_structure, "flatness is defined on paths");
  if (!g.has_vertex(v)) throw Error(ErrorCode::invalid_vertex, "unknown vertex");
  if (p.size() != g.n_vertices()) throw Error(ErrorCode::invalid_size, "profile size does not match graph");
  const auto order = g.path_order();
  std::vector<double> levels;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    levels.push_back(p[order[i]]);
    if (order[i] == v) pos = i;
  }
  return {pos, levels};
}

}  // namespace

bool is_two_sided_flat(const Graph& g, const WaterProfile& p, Vertex v, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::out_of_range, "eps must be positive");
  const auto [pos, levels] = along_path(g, p, v);
  std::vector<double> prefix(levels.size() + 1, 0.0);
  for (std::size_t i = 0; i < levels.size(); ++i) prefix[i + 1] = prefix[i] + levels[i];
  constexpr double slack = 1e-12;
  for (std::size_t lo = 0; lo <= pos; ++lo) {
    for (std::size_t hi = pos; hi < levels.size(); ++hi) {
      const double avg = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
      if (std::abs(avg - 0.5) > eps + slack) return false;
    }
  }
  return true;
}

WaterProfile make_flat_profile(std::size_t n, Vertex v, double eps, std::uint64_t seed, double spike) {
  if (n < 3 || v == 0 || v + 1 >= n) throw Error(ErrorCode::invalid_spec, "flat profile needs an interior target");
  if (!(eps > 0.0 && eps <= 0.5)) throw Error(ErrorCode::out_of_range, "eps must lie in (0, 1/2]");
  if (!(spike >= 0.0 && spike <= 0.5)) throw Error(ErrorCode::out_of_range, "spike must lie in [0, 1/2]");

  std::mt19937_64 rng(seed);
  std::vector<double> levels(n);
  for (double& x : levels) x = 0.5 + 0.5 * eps * (2.0 * uniform01(rng) - 1.0);

  if (spike > 0.0) {
    const auto radius = static_cast<std::size_t>(std::ceil(2.0 * spike / eps));
    // left side: +spike first, right side: -spike first
    for (std::size_t d = radius; d <= v; ++d)
      levels[v - d] = 0.5 + ((d - radius) % 2 == 0 ? spike : -spike);
    for (std::size_t d = radius; v + d < n; ++d)
      levels[v + d] = 0.5 + ((d - radius) % 2 == 0 ? -spike : spike);
  }

  WaterProfile p(std::move(levels));
  if (!is_two_sided_flat(make_path(n), p, v, eps))
    throw Error(ErrorCode::contract_violation, "constructed profile is not flat");
  return p;
}

WaterProfile sample_flat_profile(const Graph& g, Vertex v, double eps, const ProfileLaw& law,
                                 std::uint64_t seed, std::size_t max_attempts) {
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    WaterProfile p = sample_profile(g, law, derive_seed(seed, mc_stream, attempt));
    if (is_two_sided_flat(g, p, v, eps)) return p;
  }
  throw Error(ErrorCode::resource_budget, "no flat profile within the attempt budget");
}

StuckBandResult stuck_band_experiment(const Graph& g, const WaterProfile& p, Vertex v, double eps,
                                      std::size_t adversary_moves, std::uint64_t seed,
                                      std::size_t margin) {
  if (!is_two_sided_flat(g, p, v, eps))
    throw Error(ErrorCode::invalid_precondition, "initial profile is not two-sidedly flat at v");
  const auto order = g.path_order();
  const std::size_t n = order.size();
  if (margin == 0) margin = n / 4;

  std::vector<Edge> interior;
  for (std::size_t i = margin; i + 1 + margin < n; ++i) interior.emplace_back(order[i], order[i + 1]);
  if (interior.empty() && adversary_moves > 0)
    throw Error(ErrorCode::invalid_precondition, "margin leaves no interior edges");

  StuckBandResult r;
  r.margin = margin;
  std::vector<double> levels(p.levels().begin(), p.levels().end());
  auto record = [&] {
    const double x = levels[v];
    r.min_level = std::min(r.min_level, x);
    r.max_level = std::max(r.max_level, x);
    r.max_deviation = std::max(r.max_deviation, std::abs(x - 0.5));
  };
  r.min_level = r.max_level = levels[v];
  record();

  std::mt19937_64 rng(derive_seed(seed, adversary_stream, 0));
  for (std::size_t t = 0; t < adversary_moves; ++t) {
    const Edge e = interior[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(interior.size()))];
    const double mu = 0.5 * (1.0 - uniform01(rng));
    average_pair(levels, e, mu);
    record();
    ++r.moves;
  }
  r.within_band = r.max_deviation <= 6.0 * eps;
  return r;
}

}  // namespace aqua
