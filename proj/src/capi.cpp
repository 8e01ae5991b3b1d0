#include "cubicspray/cubicspray.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "cubicspray/corpus.hpp"
#include "cubicspray/errors.hpp"
#include "cubicspray/json_io.hpp"
#include "cubicspray/suites.hpp"
#include "cubicspray/version.hpp"

using namespace cubicspray;

struct cs_cubic {
  json spec;
  ParsedCubic parsed;
};

namespace {

thread_local std::string last_error;

int record(int status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body` and maps exceptions onto status codes.
template <class F>
int guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return record(static_cast<int>(e.kind()), e.what());
  } catch (const json::exception& e) {
    return record(CS_INPUT, std::string("malformed JSON: ") + e.what());
  } catch (const std::exception& e) {
    return record(CS_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out_json, const json& j) {
  if (out_json) *out_json = dup_string(j.dump());
}

Tolerances tolerances(const cs_options* o) {
  Tolerances t;
  if (!o) return t;
  t.membership = o->tol_membership;
  t.rank = o->tol_rank;
  t.cluster_radius = o->cluster_radius;
  t.retries = o->retries;
  if (!(t.membership > 0.0) || !(t.rank > 0.0) || !(t.cluster_radius > 0.0) || t.retries < 1)
    fail(ErrorKind::Input, "tolerances must be positive and retries at least 1");
  return t;
}

cs_options defaults() {
  cs_options o;
  cs_options_init(&o);
  return o;
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorKind::Input, std::string(what) + " is null");
}

ParsedVector read_point(const char* text, int num_vars, const char* name) {
  require(text, name);
  ParsedVector v = parse_vector_text(text);
  if (static_cast<int>(v.numeric.size()) != num_vars)
    fail(ErrorKind::Input, std::string(name) + " has " + std::to_string(v.numeric.size()) + " coordinates, expected " +
                               std::to_string(num_vars));
  return v;
}

}  // namespace

extern "C" {

void cs_options_init(cs_options* opts) {
  if (!opts) return;
  const Tolerances t;
  opts->tol_membership = t.membership;
  opts->tol_rank = t.rank;
  opts->cluster_radius = t.cluster_radius;
  opts->retries = t.retries;
  opts->seed = 0;
  opts->backend = CS_BACKEND_AUTO;
  opts->trials = 20;
  opts->spanning = 0;
  opts->threads = 0;
}

const char* cs_version(void) { return kToolVersion; }

const char* cs_last_error(void) { return last_error.c_str(); }

void cs_string_free(char* s) { std::free(s); }

int cs_cubic_from_json(const char* text, cs_cubic** out) {
  return guarded([&] {
    require(text, "cubic document");
    require(out, "output handle");
    *out = nullptr;
    ParsedCubic parsed = parse_cubic(text);
    json spec = json::parse(text);
    *out = new cs_cubic{std::move(spec), std::move(parsed)};
    return CS_OK;
  });
}

int cs_cubic_fermat(int dim, cs_cubic** out) {
  return guarded([&] {
    require(out, "output handle");
    if (dim < 2) fail(ErrorKind::Input, "dimension < 2");
    const json spec = cubic_json(fermat_cubic(dim));
    *out = new cs_cubic{spec, parse_cubic(spec.dump())};
    return CS_OK;
  });
}

void cs_cubic_free(cs_cubic* cubic) { delete cubic; }

int cs_cubic_dim(const cs_cubic* cubic) { return cubic ? cubic->parsed.dim : -1; }

int cs_cubic_to_json(const cs_cubic* cubic, char** out_json) {
  return guarded([&] {
    require(cubic, "cubic");
    const auto& p = cubic->parsed;
    emit(out_json, p.exact ? cubic_json(*p.exact, p.base_point) : cubic_json(p.numeric));
    return CS_OK;
  });
}

int cs_tau(const cs_cubic* cubic, const char* u, const char* x, const cs_options* opts, char** out_json) {
  return guarded([&] {
    require(cubic, "cubic");
    const cs_options o = opts ? *opts : defaults();
    const Tolerances tol = tolerances(&o);
    const auto& p = cubic->parsed;
    const int nv = p.numeric.num_vars();
    const ParsedVector pu = read_point(u, nv, "u");
    const ParsedVector px = read_point(x, nv, "x");
    const bool exact_ok = p.exact && pu.exact && px.exact;
    if (o.backend == CS_BACKEND_RATIONAL && !exact_ok)
      fail(ErrorKind::Input, "rational backend needs rational coefficients and points");
    json j;
    if (exact_ok && o.backend != CS_BACKEND_COMPLEX) {
      const CubicHypersurface<Rational> X(*p.exact, tol);
      const auto y = third_point(X, ProjectivePoint<Rational>(*pu.exact), ProjectivePoint<Rational>(*px.exact));
      j = {{"backend", "rational"}, {"tau", point_json(y)}};
    } else {
      const CubicHypersurface<Complex> X(p.numeric, tol);
      const auto y = third_point(X, ProjectivePoint<Complex>(pu.numeric), ProjectivePoint<Complex>(px.numeric));
      j = {{"backend", "complex"}, {"tau", point_json(y)}};
    }
    j["u"] = pu.exact ? vector_json(*pu.exact) : vector_json(pu.numeric);
    j["x"] = px.exact ? vector_json(*px.exact) : vector_json(px.numeric);
    emit(out_json, j);
    return CS_OK;
  });
}

int cs_lines(const cs_cubic* cubic, const char* x, const cs_options* opts, char** out_json) {
  return guarded([&] {
    require(cubic, "cubic");
    const cs_options o = opts ? *opts : defaults();
    const auto& p = cubic->parsed;
    const ParsedVector px = read_point(x, p.numeric.num_vars(), "x");
    if (o.backend == CS_BACKEND_RATIONAL && !(p.exact && px.exact))
      fail(ErrorKind::Input, "rational backend needs rational coefficients and points");
    const CubicHypersurface<Complex> X(p.numeric, tolerances(&o));
    const ProjectivePoint<Complex> center(px.numeric);
    json j;
    if (o.spanning) {
      j = spanning_lines_json(spanning_lines(X, center, o.seed), center);
    } else {
      if (X.n() != 3) fail(ErrorKind::Input, "direct line enumeration needs n = 3; pass --spanning for n > 3");
      j = line_set_json(lines_through(X, center, o.seed));
      if (p.exact && px.exact && o.backend != CS_BACKEND_COMPLEX)
        j["eckardt_exact"] =
            is_eckardt(CubicHypersurface<Rational>(*p.exact, tolerances(&o)), ProjectivePoint<Rational>(*px.exact));
    }
    emit(out_json, j);
    return CS_OK;
  });
}

int cs_certify(const cs_cubic* cubic, const char* y, const cs_options* opts, char** out_json) {
  return guarded([&] {
    require(cubic, "cubic");
    const cs_options o = opts ? *opts : defaults();
    const auto& p = cubic->parsed;
    const ParsedVector py = read_point(y, p.numeric.num_vars(), "y");
    const CubicHypersurface<Complex> X(p.numeric, tolerances(&o));
    const SprayCertificate cert = build_certificate(X, ProjectivePoint<Complex>(py.numeric), o.seed);
    emit(out_json, certificate_json(cert, cubic->spec));
    if (cert.counterexample_candidate)
      return record(CS_RANK_DEFICIENT, "rank deficient after " + std::to_string(cert.rank_attempts) +
                                           " setups: counterexample candidate written");
    if (!cert.verified) return record(CS_VERIFICATION_FAILED, "certificate failed re-verification");
    return static_cast<int>(CS_OK);
  });
}

int cs_verify(const char* certificate_json_text, const cs_options* opts, char** out_json) {
  return guarded([&] {
    require(certificate_json_text, "certificate");
    const cs_options o = opts ? *opts : defaults();
    json doc;
    try {
      doc = json::parse(certificate_json_text);
    } catch (const json::exception& e) {
      fail(ErrorKind::Input, std::string("malformed certificate: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("cubic")) fail(ErrorKind::Input, "malformed certificate: missing cubic");
    const ParsedCubic p = parse_cubic(doc["cubic"].dump());
    const SprayCertificate cert = certificate_from_json(doc);
    const CubicHypersurface<Complex> X(p.numeric, tolerances(&o));
    VerifyResult v = verify_certificate(X, cert);
    if (!cert.verified) {
      v.ok = false;
      v.reasons.push_back("certificate does not claim verification");
    }
    json reasons = json::array();
    for (const auto& r : v.reasons) reasons.push_back(r);
    emit(out_json, {{"verified", v.ok}, {"reasons", reasons}, {"rank", cert.rank.rank}, {"n", X.n()}});
    if (!v.ok) return record(CS_VERIFICATION_FAILED, "certificate rejected");
    return static_cast<int>(CS_OK);
  });
}

int cs_suite(const cs_cubic* cubic, const char* corpus_spec, const char* suite, const cs_options* opts,
             char** out_json) {
  return guarded([&] {
    const cs_options o = opts ? *opts : defaults();
    SuiteOptions so;
    so.suite = suite ? suite : "all";
    so.trials = o.trials;
    so.seed = o.seed;
    so.tol = tolerances(&o);
    so.threads = o.threads;
    if (o.backend == CS_BACKEND_RATIONAL) so.backend = Backend::Rational;
    if (o.backend == CS_BACKEND_COMPLEX) so.backend = Backend::Complex;
    std::vector<SuiteInput> inputs;
    if (cubic) inputs.push_back(make_suite_input("cubic", cubic->spec));
    if (corpus_spec) {
      const auto corpus = generate_corpus(parse_corpus_spec(corpus_spec), so.tol);
      for (const auto& c : corpus) inputs.push_back(make_suite_input(c.label, cubic_json(c.form, c.base_point)));
    }
    if (inputs.empty() && so.trials > 0) fail(ErrorKind::Input, "suite needs a cubic file or --corpus");
    const json report = run_suite(inputs, so);
    emit(out_json, report);
    const int code = report_exit_code(report);
    if (code != 0)
      return record(code, std::to_string(report["totals"]["failed"].get<int>()) + " check(s) failed");
    return code;
  });
}

int cs_corpus(const char* corpus_spec, const cs_options* opts, char** out_json) {
  return guarded([&] {
    require(corpus_spec, "corpus spec");
    const cs_options o = opts ? *opts : defaults();
    const auto corpus = generate_corpus(parse_corpus_spec(corpus_spec), tolerances(&o));
    json arr = json::array();
    for (const auto& c : corpus) arr.push_back(cubic_json(c.form, c.base_point));
    emit(out_json, arr);
    return CS_OK;
  });
}

}  // extern "C"
