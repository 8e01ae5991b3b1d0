// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "cubicspray/corpus.hpp"
#include "cubicspray/cubicspray.h"
#include "cubicspray/json_io.hpp"
#include "cubicspray/random.hpp"
#include "cubicspray/suites.hpp"

using namespace cubicspray;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += "; over the " + std::to_string(static_cast<int>(budget_s)) + " s budget";
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct Handle {
  cs_cubic* h = nullptr;
  explicit Handle(const json& doc) {
    if (cs_cubic_from_json(doc.dump().c_str(), &h) != CS_OK) throw std::runtime_error(cs_last_error());
  }
  ~Handle() { cs_cubic_free(h); }
};

// Runs one C API call and returns (status, parsed output).
std::pair<int, json> call(const std::function<int(char**)>& f) {
  char* out = nullptr;
  const int status = f(&out);
  json j = out ? json::parse(out) : json();
  cs_string_free(out);
  return {status, j};
}

std::vector<CorpusCubic> corpus3() {
  static const auto c = generate_corpus(CorpusSpec{5, 3, 5, 2024});
  return c;
}

std::vector<SuiteInput> corpus_inputs() {
  std::vector<SuiteInput> in;
  for (const auto& c : corpus3()) in.push_back(make_suite_input(c.label, cubic_json(c.form, c.base_point)));
  return in;
}

json run(const std::vector<SuiteInput>& inputs, const std::string& suite, int trials, std::uint64_t seed,
         std::optional<Backend> backend = std::nullopt) {
  SuiteOptions o;
  o.suite = suite;
  o.trials = trials;
  o.seed = seed;
  o.backend = backend;
  return run_suite(inputs, o);
}

// Passing records per check tag.
std::map<std::string, std::pair<int, int>> tally(const json& report) {
  std::map<std::string, std::pair<int, int>> t;
  for (const auto& r : report["records"]) {
    auto& e = t[r["check"].get<std::string>()];
    ++e.second;
    if (r["pass"].get<bool>()) ++e.first;
  }
  return t;
}

Outcome six_lines() {
  Handle fermat(cubic_json(fermat_cubic(3)));
  const auto X = CubicHypersurface<Complex>(to_complex(fermat_cubic(3)));
  std::vector<std::string> points{"3,4,5,-6,0"};
  for (std::uint64_t s = 0; s < 20; ++s)
    points.push_back(point_json(random_point_on_cubic(X.form(), derive_seed(1001, s))).dump());
  int ok = 0, distinct6 = 0;
  double worst = 0.0;
  for (const auto& p : points) {
    const auto [status, j] = call([&](char** o) { return cs_lines(fermat.h, p.c_str(), nullptr, o); });
    if (status != CS_OK || j["eckardt"] == true) continue;
    bool good = j["total_multiplicity"] == 6;
    for (const auto& l : j["lines"]) {
      const double r = l["residual"].get<double>();
      worst = std::max(worst, r);
      good = good && r < 1e-9;
    }
    if (j["lines"].size() == 6) ++distinct6;
    if (good) ++ok;
  }
  return {ok == 21, fmt("%.0f/21 points with multiplicity 6, %.0f with 6 distinct lines, max residual %.1e", ok,
                        distinct6, worst)};
}

Outcome eckardt_census() {
  Handle fermat(cubic_json(fermat_cubic(3)));
  const Complex roots[3] = {Complex(-1.0, 0.0), std::polar(1.0, std::numbers::pi / 3.0),
                            std::polar(1.0, -std::numbers::pi / 3.0)};
  int flagged = 0, candidates = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (const Complex& r : roots) {
        Vec<Complex> v(5, Complex(0.0));
        v[i] = 1.0;
        v[j] = r;
        ++candidates;
        const auto [status, out] =
            call([&](char** o) { return cs_lines(fermat.h, vector_json(v).dump().c_str(), nullptr, o); });
        if (status == CS_OK && out["eckardt"] == true) ++flagged;
      }
  const auto X = CubicHypersurface<Complex>(to_complex(fermat_cubic(3)));
  int rejected = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = random_point_on_cubic(X.form(), derive_seed(2002, s));
    const auto [status, out] =
        call([&](char** o) { return cs_lines(fermat.h, point_json(p).dump().c_str(), nullptr, o); });
    if (status == CS_OK && out["eckardt"] == false) ++rejected;
  }
  return {candidates == 30 && flagged == 30 && rejected == 20,
          fmt("%.0f/%.0f candidates flagged, %.0f/20 random points rejected", flagged, candidates, rejected)};
}

Outcome involution() {
  const json r = run(corpus_inputs(), "involution", 200, 9, Backend::Rational);
  const auto t = tally(r)["involution"];
  return {r["backend"] == "rational" && t.first == 200 && t.second == 200,
          fmt("%.0f/%.0f exact involution checks on 5 rational cubics", t.first, t.second)};
}

Outcome fixed_points() {
  auto inputs = corpus_inputs();
  inputs.push_back(make_suite_input("fermat", cubic_json(fermat_cubic(3), Vec<Rational>{3, 4, 5, -6, 0})));
  const json r = run(inputs, "fixed-points", 100, 11, Backend::Rational);
  auto t = tally(r);
  const auto m = t["fixed-points/mirror"], c = t["fixed-points/contraction"], g = t["fixed-points/generic"];
  const bool ok = m == std::pair{100, 100} && c == std::pair{100, 100} && g == std::pair{100, 100};
  return {ok, "mirror " + std::to_string(m.first) + "/" + std::to_string(m.second) + ", contraction " +
                  std::to_string(c.first) + "/" + std::to_string(c.second) + ", generic " + std::to_string(g.first) +
                  "/" + std::to_string(g.second)};
}

Outcome bitangency() {
  std::vector<SuiteInput> inputs{make_suite_input("fermat", cubic_json(fermat_cubic(3)))};
  for (auto& c : corpus_inputs()) inputs.push_back(std::move(c));
  const json r = run(inputs, "bitangency", 50, 13, Backend::Complex);
  auto t = tally(r);
  const auto l = t["bitangency/lines-in-S-and-S*"], p = t["bitangency/S-and-S*-in-C"];
  int points = 0;
  for (const auto& rec : r["records"])
    if (rec["check"] == "bitangency/lines-in-S-and-S*") points += rec["residuals"]["points"].get<int>();
  return {l == std::pair{50, 50} && p == std::pair{50, 50},
          fmt("%.0f u with every line point in S_u and S*_u (%.0f points), ", l.first, points) +
              fmt("%.0f u with every S_u and S*_u point on a line", p.first)};
}

Outcome certify_runs() {
  struct Target {
    std::string label;
    json doc;
  };
  std::vector<Target> targets{{"fermat3", cubic_json(fermat_cubic(3))}, {"fermat4", cubic_json(fermat_cubic(4))}};
  for (const auto& c : corpus3()) targets.push_back({c.label, cubic_json(c.form, c.base_point)});
  int ok = 0, total = 0, deficient = 0;
  std::string first_failure;
  for (std::size_t ti = 0; ti < targets.size(); ++ti) {
    Handle h(targets[ti].doc);
    const auto f = parse_cubic(targets[ti].doc.dump()).numeric;
    for (std::uint64_t s = 0; s < 10; ++s) {
      const std::uint64_t seed = derive_seed(3003 + ti, s);
      const auto y = random_point_on_cubic(f, seed);
      cs_options o;
      cs_options_init(&o);
      o.seed = seed;
      const auto [status, cert] =
          call([&](char** out) { return cs_certify(h.h, point_json(y).dump().c_str(), &o, out); });
      ++total;
      const int n = cs_cubic_dim(h.h);
      if (status == CS_RANK_DEFICIENT) ++deficient;
      if (status == CS_OK && cert["rank"] == n && cert["verified"] == true) {
        const auto [vs, v] = call([&](char** out) { return cs_verify(cert.dump().c_str(), &o, out); });
        if (vs == CS_OK) {
          ++ok;
          continue;
        }
      }
      if (first_failure.empty())
        first_failure = "; first failure " + targets[ti].label + " status " + std::to_string(status) + " " +
                        cs_last_error();
    }
  }
  return {ok == 70 && total == 70 && deficient == 0,
          fmt("%.0f/%.0f certificates verified with rank n, %.0f rank deficient", ok, total, deficient) +
              first_failure};
}

Outcome conic_orbits() {
  const json r = run({make_suite_input("fermat", cubic_json(fermat_cubic(3)))}, "conic", 20, 17, Backend::Complex);
  int ok = 0;
  double worst = 0.0;
  for (const auto& rec : r["records"]) {
    const auto& res = rec["residuals"];
    worst = std::max(worst, res["conic_residual"].get<double>());
    if (rec["pass"] == true && res["plane_rank"] == 3 && res["moment_rank"] == 5 &&
        res["conic_residual"].get<double>() < 1e-9)
      ++ok;
  }
  return {ok == 20 && r["records"].size() == 20,
          fmt("%.0f/20 orbits are plane conics, worst sigma6/sigma5 %.1e", ok, worst)};
}

Outcome numerics() {
  // finite differences against the symbolic orbit tangent
  std::vector<CubicHypersurface<Complex>> surfaces{CubicHypersurface<Complex>(to_complex(fermat_cubic(3))),
                                                   CubicHypersurface<Complex>(to_complex(fermat_cubic(4)))};
  for (const auto& c : corpus3()) surfaces.emplace_back(to_complex(c.form));
  double worst_fd = 0.0;
  int setups = 0, orbits = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto& X = surfaces[s % surfaces.size()];
    const auto y = random_point_on_cubic(X.form(), derive_seed(4004, s));
    const auto setup = pick_setup(X, y, derive_seed(4005, s));
    const auto lines = spanning_lines(X, setup.x, derive_seed(4006, s)).lines;
    const auto frame = tangent_frame(X, y);
    for (const auto& l : lines) {
      const auto z = tangent_point_z(X.polar(), setup.u.coords(), setup.x.coords(), l.dir());
      worst_fd = std::max(worst_fd, finite_difference_error(X, setup.u, setup.x.coords(), z, frame));
      ++orbits;
    }
    ++setups;
  }

  // exact polarization identities
  int identity_failures = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    Rng rng(derive_seed(4007, s));
    const int nv = 3 + static_cast<int>(s % 4);
    std::map<Monomial, Rational> coeffs;
    for (int i = 0; i < nv; ++i)
      for (int j = i; j < nv; ++j)
        for (int k = j; k < nv; ++k) coeffs[make_monomial(i, j, k)] = Rational(rng.integer(-5, 5));
    coeffs[make_monomial(0, 0, 0)] += 6;
    const HomogeneousCubic<Rational> f(nv, coeffs);
    const auto P = polarize(f);
    auto vec = [&] {
      Vec<Rational> v;
      for (int i = 0; i < nv; ++i) {
        Rational q(rng.integer(-9, 9), rng.integer(1, 6));
        q.canonicalize();
        v.push_back(q);
      }
      return v;
    };
    const auto a = vec(), b = vec(), c = vec();
    Rational t(rng.integer(-7, 7), rng.integer(1, 4));
    t.canonicalize();
    const Rational abc = P(a, b, c);
    const bool sym = P(a, c, b) == abc && P(b, a, c) == abc && P(b, c, a) == abc && P(c, a, b) == abc &&
                     P(c, b, a) == abc;
    const bool diag = P(a, a, a) == f.evaluate(a);
    bool restriction = false;
    if (!proj_equal(a, b)) restriction = restrict_to_line(f, a, b)(t) == f.evaluate(axpby(Rational(1), a, t, b));
    else restriction = true;
    if (!(sym && diag && restriction)) ++identity_failures;
  }
  return {worst_fd < 1e-6 && setups == 100 && identity_failures == 0,
          fmt("worst finite-difference error %.1e over %.0f setups (%.0f orbits), ", worst_fd, setups, orbits) +
              fmt("%.0f/1000 exact polarization samples failed", identity_failures)};
}

Outcome divisors() {
  std::vector<CubicHypersurface<Complex>> surfaces{CubicHypersurface<Complex>(to_complex(fermat_cubic(3)))};
  for (const auto& c : corpus3()) surfaces.emplace_back(to_complex(c.form));
  int conserved = 0, contained = 0, bad = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto& X = surfaces[s % surfaces.size()];
    Rng rng(derive_seed(5005, s));
    DivisorOnLine<Complex> d = [&] {
      // every fifth line lies on X, to exercise the containment flag
      if (s % 5 == 4) {
        const auto p = random_point_on_cubic(X.form(), derive_seed(5006, s));
        const auto ls = lines_through(X, p, s);
        const auto& l = ls.lines.at(s % ls.lines.size()).line;
        return bezout_divisor(X, l.base(), ProjectivePoint<Complex>(l.point_at(1.0, rng.complex_normal())));
      }
      if (s % 5 == 3) {
        // tangent line: a double point
        const auto p = random_point_on_cubic(X.form(), derive_seed(5007, s));
        const auto frame = tangent_frame(X, p);
        return bezout_divisor(X, p, ProjectivePoint<Complex>(axpby(Complex(1.0), p.coords(), Complex(1.0),
                                                                   frame.basis[s % frame.basis.size()])));
      }
      return bezout_divisor(X, ProjectivePoint<Complex>(rng.complex_vector(5)),
                            ProjectivePoint<Complex>(rng.complex_vector(5)));
    }();
    if (d.contained) {
      ++contained;
      if (s % 5 != 4) ++bad;
    } else if (d.degree() == 3) {
      ++conserved;
      if (s % 5 == 4) ++bad;
    } else {
      ++bad;
    }
  }
  int setups = 0, reduced = 0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto& X = surfaces[s % surfaces.size()];
    const auto setup = pick_setup(X, random_point_on_cubic(X.form(), derive_seed(5008, s)), s);
    ++setups;
    if (setup.divisor.reduced() && setup.flags.all()) ++reduced;
  }
  const auto Xq = CubicHypersurface<Rational>(fermat_cubic(3));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto y = random_point_on_cubic(Xq.form(), Vec<Rational>{3, 4, 5, -6, 0}, derive_seed(5009, s));
    const auto setup = pick_setup(Xq, y, s);
    ++setups;
    if (setup.divisor.reduced() && setup.flags.all()) ++reduced;
  }
  return {bad == 0 && conserved + contained == 500 && reduced == setups,
          fmt("%.0f divisors of degree 3, %.0f contained lines, %.0f inconsistent; ", conserved, contained, bad) +
              fmt("%.0f/%.0f accepted setups reduced", reduced, setups)};
}

}  // namespace

int main() {
  criterion(1, "six lines through general points of the Fermat threefold", 10, six_lines);
  criterion(2, "Eckardt census on the Fermat threefold", 30, eckardt_census);
  criterion(3, "involution on rational cubics", 5, involution);
  criterion(4, "fixed-point dichotomy", 0, fixed_points);
  criterion(5, "bitangency", 0, bitangency);
  criterion(6, "spray certificates", 120, certify_runs);
  criterion(7, "conic orbits", 20, conic_orbits);
  criterion(8, "numerics cross-checks", 0, numerics);
  criterion(9, "divisor conservation", 0, divisors);
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
