#include "cubicspray/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <thread>

#include "cubicspray/corpus.hpp"
#include "cubicspray/errors.hpp"
#include "cubicspray/random.hpp"
#include "cubicspray/version.hpp"

namespace cubicspray {

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SuiteInput make_suite_input(std::string label, const json& spec) {
  ParsedCubic p = parse_cubic(spec.dump());
  SuiteInput in{std::move(label), spec, std::move(p.exact), std::move(p.numeric), std::move(p.base_point)};
  if (in.exact && in.base_point) {
    if (sgn(in.exact->evaluate(*in.base_point)) != 0) fail(ErrorKind::Input, "base_point is not on the cubic");
    if (is_zero_vector(in.exact->gradient(*in.base_point))) fail(ErrorKind::Input, "cubic is singular at base_point");
  }
  if (in.exact && !in.base_point) in.base_point = find_small_rational_point(*in.exact);
  return in;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"involution", "fixed-points", "bitangency", "lines",
                                              "eckardt",    "spray",        "conic"};
  return names;
}

namespace {

struct Record {
  std::string check;
  Backend backend = Backend::Complex;
  json inputs = json::object();
  bool pass = false;
  json residuals = json::object();
  std::string detail;
};

struct Context {
  const SuiteInput& input;
  const SuiteOptions& opts;
  Backend backend;
};

// Thrown inside a trial when a sampled configuration keeps landing in an
// excluded locus; reported as a failed record with this message.
[[noreturn]] void exhausted(const std::string& what) {
  fail(ErrorKind::ResampleExhausted, what + ": resample limit exceeded");
}

template <class T>
CubicHypersurface<T> surface(const Context& ctx) {
  if constexpr (Field<T>::exact)
    return CubicHypersurface<Rational>(*ctx.input.exact, ctx.opts.tol);
  else
    return CubicHypersurface<Complex>(ctx.input.numeric, ctx.opts.tol);
}

// A point of X at general position: two chained tangent-residual steps from
// the base point (rational) or a root on a random line (complex).
template <class T>
ProjectivePoint<T> sample_point(const Context& ctx, const CubicHypersurface<T>& X, std::uint64_t seed) {
  if constexpr (Field<T>::exact) {
    const auto a = random_point_on_cubic(X.form(), *ctx.input.base_point, derive_seed(seed, 1));
    if (is_zero_vector(X.form().gradient(a.coords()))) exhausted("rational sampling hit a singular point");
    return random_point_on_cubic(X.form(), a.coords(), derive_seed(seed, 2));
  } else {
    return random_point_on_cubic(X.form(), seed, ctx.opts.tol.membership);
  }
}

// Residual point of X on a random line tangent at p, so P(p, p, q) = 0.
template <class T>
ProjectivePoint<T> tangent_residual(const CubicHypersurface<T>& X, const ProjectivePoint<T>& p, std::uint64_t seed) {
  if constexpr (Field<T>::exact) {
    return random_point_on_cubic(X.form(), p.coords(), seed);
  } else {
    const Vec<Complex> g = X.form().gradient(p.coords());
    std::size_t k = 0;
    for (std::size_t i = 1; i < g.size(); ++i)
      if (std::abs(g[i]) > std::abs(g[k])) k = i;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
      Vec<Complex> v = rng.complex_vector(p.size());
      const Complex gv = dot(g, v);
      v[k] -= gv / g[k];
      const Complex c2 = 3.0 * X.polar()(p.coords(), v, v);
      const Complex c3 = X.polar()(v, v, v);
      if (std::abs(c2) < 1e-8 || std::abs(c3) < 1e-8) continue;
      const ProjectivePoint<Complex> q(axpby(c3, p.coords(), -c2, v));
      if (!proj_equal(q, p, 1e-6)) return q;
    }
    exhausted("tangent residual sampling");
  }
}

template <class T>
double point_tol() {
  return Field<T>::exact ? 0.0 : 1e-8;
}

template <class T>
std::vector<Record> involution_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<T>(ctx);
  for (int attempt = 0; attempt < ctx.opts.tol.retries; ++attempt) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    const auto u = sample_point(ctx, X, derive_seed(s, 1));
    const auto x = sample_point(ctx, X, derive_seed(s, 2));
    if (proj_equal(u, x, point_tol<T>()) || in_S(X, u, x)) continue;
    Record r{"involution", Field<T>::backend, {{"u", point_json(u)}, {"x", point_json(x)}}};
    const auto y = third_point(X, u, x);
    const auto back = third_point(X, u, y);
    const bool y_on = contains(X, y);
    r.pass = y_on && proj_equal(back, x, point_tol<T>());
    r.inputs["tau_x"] = point_json(y);
    if constexpr (Field<T>::exact) {
      r.residuals["exact"] = true;
    } else {
      r.residuals["membership"] = X.relative(X.form().evaluate(y.coords()), y.coords(), y.coords(), y.coords());
    }
    if (!r.pass) r.detail = y_on ? "tau_u(tau_u(x)) != x" : "tau_u(x) not on X";
    return {r};
  }
  exhausted("involution sampling");
}

template <class T>
std::vector<Record> fixed_points_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<T>(ctx);
  const double tol = point_tol<T>();
  std::vector<Record> out;
  auto sample_pair = [&](const char* what, auto&& draw, auto&& accept) {
    for (int attempt = 0; attempt < ctx.opts.tol.retries; ++attempt) {
      auto [u, x] = draw(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
      if (!proj_equal(u, x, tol) && accept(u, x)) return std::pair{u, x};
    }
    exhausted(what);
  };

  {
    // x in S*_u \ C_u: u on a tangent line at x.
    auto [u, x] = sample_pair(
        "mirror sampling",
        [&](std::uint64_t s) {
          auto x = sample_point(ctx, X, derive_seed(s, 1));
          return std::pair{tangent_residual(X, x, derive_seed(s, 2)), x};
        },
        [&](const auto& u, const auto& x) { return !in_C(X, u, x); });
    Record r{"fixed-points/mirror", Field<T>::backend, {{"u", point_json(u)}, {"x", point_json(x)}}};
    const auto raw = third_point_raw(X.polar(), u.coords(), x.coords());
    r.pass = in_S_star(X, u, x) && proj_equal(raw, x.coords(), tol) && proj_equal(third_point(X, u, x), x, tol);
    if (!r.pass) r.detail = "point of S*_u \\ C_u is not fixed";
    out.push_back(std::move(r));
  }
  {
    // x in S_u \ C_u: x on a tangent line at u.
    auto [u, x] = sample_pair(
        "contraction sampling",
        [&](std::uint64_t s) {
          auto u = sample_point(ctx, X, derive_seed(s, 3));
          return std::pair{u, tangent_residual(X, u, derive_seed(s, 4))};
        },
        [&](const auto& u, const auto& x) { return !in_C(X, u, x); });
    Record r{"fixed-points/contraction", Field<T>::backend, {{"u", point_json(u)}, {"x", point_json(x)}}};
    const auto raw = third_point_raw(X.polar(), u.coords(), x.coords());
    r.pass = in_S(X, u, x) && proj_equal(raw, u.coords(), tol) && proj_equal(third_point(X, u, x), u, tol);
    if (!r.pass) r.detail = "point of S_u \\ C_u is not sent to u";
    out.push_back(std::move(r));
  }
  {
    auto [u, x] = sample_pair(
        "generic sampling",
        [&](std::uint64_t s) {
          return std::pair{sample_point(ctx, X, derive_seed(s, 5)), sample_point(ctx, X, derive_seed(s, 6))};
        },
        [&](const auto& u, const auto& x) { return !in_S(X, u, x) && !in_S_star(X, u, x); });
    Record r{"fixed-points/generic", Field<T>::backend, {{"u", point_json(u)}, {"x", point_json(x)}}};
    const auto raw = third_point_raw(X.polar(), u.coords(), x.coords());
    const auto y = third_point(X, u, x);
    // Complex images are compared with a looser tolerance, so a pass cannot
    // come from a near miss.
    const double far = Field<T>::exact ? 0.0 : 1e-6;
    r.pass = !proj_equal(raw, x.coords(), far) && !proj_equal(raw, u.coords(), far) && !proj_equal(y, x, far) &&
             !proj_equal(y, u, far);
    if (!r.pass) r.detail = "point off S_u and S*_u is fixed or contracted";
    out.push_back(std::move(r));
  }
  return out;
}

TernaryForm<Complex> ternary_from(const HomogeneousCubic<Complex>& f) {
  TernaryForm<Complex> t(3);
  for (const auto& [m, c] : f.coefficients()) {
    std::array<int, 3> e{0, 0, 0};
    for (int i : m) ++e[i];
    t.add(e, c);
  }
  return t;
}

std::vector<Record> bitangency_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<Complex>(ctx);
  const int n = X.n();
  for (int attempt = 0; attempt < ctx.opts.tol.retries; ++attempt) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    const auto u = sample_point(ctx, X, derive_seed(s, 1));
    std::vector<ProjectiveLine<Complex>> lines;
    if (n == 3) {
      const LineSet ls = lines_through(X, u, derive_seed(s, 2));
      if (ls.infinite) continue;
      for (const auto& l : ls.lines) lines.push_back(l.line);
    } else {
      lines = spanning_lines(X, u, derive_seed(s, 2)).lines;
    }

    Record line_rec{"bitangency/lines-in-S-and-S*", Backend::Complex, {{"u", point_json(u)}}};
    line_rec.pass = true;
    int sampled = 0;
    Rng rng(derive_seed(s, 3));
    for (const auto& l : lines)
      for (int k = 0; k < 3; ++k) {
        const ProjectivePoint<Complex> p(axpby(Complex(1.0), u.coords(), rng.complex_normal(), l.dir()));
        ++sampled;
        if (!(in_S(X, u, p) && in_S_star(X, u, p) && in_C(X, u, p))) {
          line_rec.pass = false;
          line_rec.detail = "point on a line through u fails S_u and S*_u membership";
        }
      }
    line_rec.residuals["points"] = sampled;
    line_rec.residuals["lines"] = lines.size();

    // A random plane inside T_u X meets S_u cap S*_u in the 6 points cut by
    // the quadric P(., ., u) and the cubic; each must lie on a line through u.
    const TangentFrame<Complex> frame = tangent_frame(X, u);
    Mat<Complex> generators{u.coords()};
    for (const auto& w : frame.basis) generators.push_back(w);
    Mat<Complex> plane;
    for (int i = 0; i < 3; ++i) {
      const Vec<Complex> c = rng.complex_vector(generators.size());
      Vec<Complex> v(u.size(), Complex(0.0));
      for (std::size_t j = 0; j < generators.size(); ++j)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += c[j] * generators[j][k];
      plane.push_back(std::move(v));
    }
    TernaryForm<Complex> q(2);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        std::array<int, 3> e{0, 0, 0};
        ++e[i];
        ++e[j];
        const Complex v = X.polar()(plane[i], plane[j], u.coords());
        q.add(e, i == j ? v : 2.0 * v);
      }
    const TernaryForm<Complex> c = ternary_from(restrict_to_subspace(X.polar(), plane));
    const PlaneIntersection inter = conic_cubic_intersect(q, c, derive_seed(s, 4), ctx.opts.tol.cluster_radius);
    if (inter.infinite) continue;
    Record pair_rec{"bitangency/S-and-S*-in-C", Backend::Complex, {{"u", point_json(u)}, {"plane", matrix_json(plane)}}};
    pair_rec.pass = true;
    int both = 0, total = 0;
    for (const auto& ip : inter.points) {
      Vec<Complex> v(u.size(), Complex(0.0));
      for (int i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < v.size(); ++k) v[k] += ip.point[i] * plane[i][k];
      const ProjectivePoint<Complex> p(v);
      total += ip.multiplicity;
      if (in_S(X, u, p) && in_S_star(X, u, p)) {
        ++both;
        if (!in_C(X, u, p)) {
          pair_rec.pass = false;
          pair_rec.detail = "point of S_u cap S*_u off every line through u";
        }
      }
    }
    pair_rec.residuals["points"] = total;
    pair_rec.residuals["in_S_and_S_star"] = both;
    if (both == 0) {
      pair_rec.pass = false;
      pair_rec.detail = "no sampled point passed S_u and S*_u";
    }
    return {line_rec, pair_rec};
  }
  exhausted("bitangency sampling");
}

std::vector<Record> lines_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<Complex>(ctx);
  const auto x = sample_point(ctx, X, derive_seed(seed, 1));
  Record r{"lines", Backend::Complex, {{"x", point_json(x)}}};
  if (X.n() == 3) {
    const LineSet ls = lines_through(X, x, derive_seed(seed, 2));
    double worst = 0.0;
    for (const auto& l : ls.lines) worst = std::max(worst, l.residual);
    r.pass = !ls.infinite && ls.total_multiplicity() == 6 && worst < 1e-9;
    r.residuals = {{"total_multiplicity", ls.total_multiplicity()},
                   {"distinct", ls.lines.size()},
                   {"max_residual", worst},
                   {"eckardt", ls.infinite}};
    if (!r.pass) r.detail = "line count or incidence residual out of range";
  } else {
    const SpanningLines sl = spanning_lines(X, x, derive_seed(seed, 2));
    r.pass = sl.rank.rank == X.n();
    r.residuals = {{"rank", sl.rank.rank}, {"slices", sl.slices}, {"singular_values", sl.rank.singular_values}};
    if (!r.pass) r.detail = "line directions do not span the tangent space";
  }
  return {r};
}

bool is_fermat(const SuiteInput& in) {
  const auto& c = in.numeric.coefficients();
  if (static_cast<int>(c.size()) != in.numeric.num_vars()) return false;
  for (const auto& [m, v] : c)
    if (m[0] != m[1] || m[1] != m[2] || v != Complex(1.0, 0.0)) return false;
  return true;
}

std::vector<Vec<Complex>> fermat_eckardt_candidates(int num_vars) {
  std::vector<Vec<Complex>> out;
  const Complex roots[3] = {Complex(-1.0, 0.0), std::polar(1.0, std::numbers::pi / 3.0),
                            std::polar(1.0, -std::numbers::pi / 3.0)};
  for (int i = 0; i < num_vars; ++i)
    for (int j = i + 1; j < num_vars; ++j)
      for (const Complex& r : roots) {
        Vec<Complex> v(num_vars, Complex(0.0));
        v[i] = 1.0;
        v[j] = r;
        out.push_back(std::move(v));
      }
  return out;
}

std::vector<Record> eckardt_random_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<Complex>(ctx);
  const auto p = sample_point(ctx, X, derive_seed(seed, 1));
  Record r{"eckardt/random-rejected", Backend::Complex, {{"x", point_json(p)}}};
  r.pass = !is_eckardt(X, p);
  if (!r.pass) r.detail = "random point flagged Eckardt";
  return {r};
}

std::vector<Record> eckardt_candidate_check(const Context& ctx, const Vec<Complex>& candidate) {
  const auto X = surface<Complex>(ctx);
  const ProjectivePoint<Complex> p(candidate);
  Record r{"eckardt/candidate-confirmed", Backend::Complex, {{"x", point_json(p)}}};
  r.pass = contains(X, p) && is_eckardt(X, p);
  if (!r.pass) r.detail = "candidate not flagged Eckardt";
  return {r};
}

std::vector<Record> spray_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<Complex>(ctx);
  const auto y = sample_point(ctx, X, derive_seed(seed, 1));
  const SprayCertificate cert = build_certificate(X, y, derive_seed(seed, 2));
  Record r{"spray", Backend::Complex, {{"y", point_json(y)}, {"certificate_seed", cert.seed}}};
  const VerifyResult v = verify_certificate(X, cert);
  double fd = 0.0;
  if (!cert.counterexample_candidate) {
    const TangentFrame<Complex> frame_y = tangent_frame(X, cert.setup.y);
    for (const auto& o : cert.orbits)
      fd = std::max(fd, finite_difference_error(X, cert.setup.u, cert.setup.x.coords(), o.z, frame_y));
  }
  const auto& sv = cert.rank.singular_values;
  r.pass = v.ok && cert.verified && cert.rank.rank == X.n() && cert.setup.divisor.reduced() && fd < 1e-6;
  r.residuals = {{"rank", cert.rank.rank},
                 {"sigma_min_over_max", sv.empty() ? 0.0 : sv.back() / sv.front()},
                 {"differential_residual", cert.differential_residual},
                 {"finite_difference_error", fd},
                 {"counterexample_candidate", cert.counterexample_candidate}};
  if (!r.pass) {
    r.detail = cert.counterexample_candidate ? "rank deficient after retries" : "certificate rejected";
    for (const auto& reason : v.reasons) r.detail += "; " + reason;
  }
  return {r};
}

std::vector<Record> conic_trial(const Context& ctx, std::uint64_t seed) {
  const auto X = surface<Complex>(ctx);
  for (int attempt = 0; attempt < ctx.opts.tol.retries; ++attempt) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    const auto y = sample_point(ctx, X, derive_seed(s, 1));
    const SpraySetup<Complex> setup = pick_setup(X, y, derive_seed(s, 2));
    std::vector<ProjectiveLine<Complex>> lines;
    try {
      lines = spanning_lines(X, setup.x, derive_seed(s, 3)).lines;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Solver && e.kind() != ErrorKind::ResampleExhausted) throw;
      continue;
    }
    const auto y_prime = sample_point(ctx, X, derive_seed(s, 4));
    if (!genericity(X, y_prime, setup.x, third_point(X, setup.x, y_prime)).all()) continue;
    const ConicReport rep = conic_orbit_check(X, lines.front(), y_prime, derive_seed(s, 5));
    Record r{"conic", Backend::Complex,
             {{"x", point_json(setup.x)}, {"line", line_json(lines.front())}, {"y_prime", point_json(y_prime)}}};
    r.pass = rep.is_conic;
    r.residuals = {{"plane_rank", rep.plane_rank},
                   {"moment_rank", rep.moment_rank},
                   {"conic_residual", rep.conic_residual},
                   {"membership_residual", rep.membership_residual},
                   {"samples", rep.samples.size()}};
    if (!r.pass) r.detail = "orbit is not a plane conic";
    return {r};
  }
  exhausted("conic setup sampling");
}

using TrialFn = std::function<std::vector<Record>(const Context&, std::uint64_t)>;

struct Plan {
  std::string suite;
  Backend backend;
  TrialFn fn;
};

bool rational_ready(const SuiteInput& in) { return in.exact.has_value() && in.base_point.has_value(); }

std::optional<Plan> plan_for(const std::string& suite, const SuiteInput& in, const SuiteOptions& opts,
                             std::string& why_not) {
  const bool exact_suite = suite == "involution" || suite == "fixed-points";
  if (exact_suite) {
    Backend b = opts.backend.value_or(rational_ready(in) ? Backend::Rational : Backend::Complex);
    if (b == Backend::Rational && !rational_ready(in)) {
      why_not = in.exact ? "no rational point found for rational sampling" : "cubic has non-rational coefficients";
      return std::nullopt;
    }
    if (suite == "involution")
      return Plan{suite, b, b == Backend::Rational ? TrialFn(involution_trial<Rational>) : TrialFn(involution_trial<Complex>)};
    return Plan{suite, b, b == Backend::Rational ? TrialFn(fixed_points_trial<Rational>) : TrialFn(fixed_points_trial<Complex>)};
  }
  if (in.numeric.dim() != 3 && suite == "eckardt") {
    why_not = "Eckardt points are tested on threefolds only";
    return std::nullopt;
  }
  if (suite == "bitangency") return Plan{suite, Backend::Complex, bitangency_trial};
  if (suite == "lines") return Plan{suite, Backend::Complex, lines_trial};
  if (suite == "eckardt") return Plan{suite, Backend::Complex, eckardt_random_trial};
  if (suite == "spray") return Plan{suite, Backend::Complex, spray_trial};
  if (suite == "conic") return Plan{suite, Backend::Complex, conic_trial};
  fail(ErrorKind::Input, "unknown suite '" + suite + "'");
}

struct Job {
  std::string suite;
  int trial = 0;
  int sub = 0;
  std::size_t input = 0;
  std::uint64_t seed = 0;
  std::function<std::vector<Record>(const Context&)> run;
  Backend backend = Backend::Complex;
};

json record_json(const Job& job, const Record& r, const std::string& label, int index) {
  json inputs = r.inputs;
  inputs["cubic"] = label;
  json j = {{"suite", job.suite},
            {"check", r.check},
            {"trial", job.trial},
            {"index", index},
            {"cubic", label},
            {"backend", backend_name(r.backend)},
            {"seed", job.seed},
            {"inputs_digest", fnv1a_hex(inputs.dump())},
            {"pass", r.pass},
            {"residuals", r.residuals}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.pass) j["inputs"] = inputs;
  return j;
}

}  // namespace

json run_suite(const std::vector<SuiteInput>& inputs, const SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> suites;
  if (opts.suite == "all") {
    suites = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), opts.suite) != suite_names().end()) {
    suites = {opts.suite};
  } else {
    fail(ErrorKind::Input, "unknown suite '" + opts.suite + "'");
  }
  if (opts.trials < 0) fail(ErrorKind::Input, "--trials must be non-negative");
  if (inputs.empty() && opts.trials > 0) fail(ErrorKind::Input, "no cubic to run the suite on");

  std::vector<Job> jobs;
  json skipped = json::array();
  std::vector<std::string> backends_used;
  for (const std::string& suite : suites) {
    // Seeded by the suite's position in the canonical list, so a suite run on
    // its own reproduces its part of "all".
    const auto pos = std::find(suite_names().begin(), suite_names().end(), suite) - suite_names().begin();
    const std::uint64_t suite_seed = derive_seed(opts.seed, static_cast<std::uint64_t>(pos));
    std::vector<bool> skip_reported(inputs.size(), false);
    for (int t = 0; t < opts.trials; ++t) {
      const std::size_t idx = static_cast<std::size_t>(t) % inputs.size();
      std::string why;
      auto plan = plan_for(suite, inputs[idx], opts, why);
      if (!plan) {
        if (!skip_reported[idx]) skipped.push_back({{"suite", suite}, {"cubic", inputs[idx].label}, {"reason", why}});
        skip_reported[idx] = true;
        continue;
      }
      Job job{suite, t, 0, idx, derive_seed(suite_seed, static_cast<std::uint64_t>(t))};
      TrialFn fn = plan->fn;
      const std::uint64_t s = job.seed;
      job.run = [fn, s](const Context& ctx) { return fn(ctx, s); };
      job.backend = plan->backend;
      backends_used.push_back(backend_name(plan->backend));
      jobs.push_back(std::move(job));
    }
    // Candidate confirmations for the Fermat threefold ride along with any non-empty run.
    if (suite == "eckardt" && opts.trials > 0) {
      for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
        if (inputs[idx].numeric.dim() != 3 || !is_fermat(inputs[idx])) continue;
        const auto candidates = fermat_eckardt_candidates(inputs[idx].numeric.num_vars());
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          Job job{suite, opts.trials + static_cast<int>(c), 0, idx, 0};
          const Vec<Complex> cand = candidates[c];
          job.run = [cand](const Context& ctx) { return eckardt_candidate_check(ctx, cand); };
          jobs.push_back(std::move(job));
        }
      }
    }
  }

  std::vector<std::vector<Record>> results(jobs.size());
  auto execute = [&](std::size_t j) {
    const Job& job = jobs[j];
    const Context ctx{inputs[job.input], opts, job.backend};
    try {
      results[j] = job.run(ctx);
    } catch (const std::exception& e) {
      Record r{job.suite, job.backend};
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
      results[j] = {r};
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) execute(j);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < jobs.size(); j += threads) execute(j);
      });
    for (auto& t : pool) t.join();
  }

  json records = json::array();
  int passed = 0, failed = 0, index = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j)
    for (const auto& r : results[j]) {
      records.push_back(record_json(jobs[j], r, inputs[jobs[j].input].label, index++));
      (r.pass ? passed : failed)++;
    }

  json input_list = json::array();
  std::string all_specs;
  for (const auto& in : inputs) {
    const std::string dump = in.spec.dump();
    all_specs += dump;
    input_list.push_back({{"label", in.label}, {"digest", fnv1a_hex(dump)}});
  }
  std::sort(backends_used.begin(), backends_used.end());
  backends_used.erase(std::unique(backends_used.begin(), backends_used.end()), backends_used.end());
  const std::string backend = backends_used.empty()  ? "none"
                              : backends_used.size() == 1 ? backends_used.front()
                                                          : "mixed";
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return {{"suite", opts.suite},
          {"tool_version", kToolVersion},
          {"backend", backend},
          {"seed", opts.seed},
          {"trials", opts.trials},
          {"tolerances",
           {{"membership", opts.tol.membership},
            {"rank", opts.tol.rank},
            {"cluster_radius", opts.tol.cluster_radius},
            {"retries", opts.tol.retries}}},
          {"inputs", input_list},
          {"inputs_digest", fnv1a_hex(all_specs)},
          {"records", records},
          {"skipped", skipped},
          {"totals", {{"checks", passed + failed}, {"passed", passed}, {"failed", failed}}},
          {"pass", failed == 0},
          {"wall_clock_ms", ms}};
}

int report_exit_code(const json& report) {
  return report.at("totals").at("failed").get<int>() == 0 ? 0 : 1;
}

}  // namespace cubicspray
