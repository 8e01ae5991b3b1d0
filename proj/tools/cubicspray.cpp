// Command-line front end over the C interface. JSON goes to stdout or --out,
// a one-line summary to stderr; the exit status is the call's status code.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cubicspray/cubicspray.h"

namespace {

struct Common {
  cs_options opts{};
  std::string backend = "auto";
  std::string out;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

int input_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return CS_INPUT;
}

int load_cubic(const std::string& path, cs_cubic** cubic) {
  std::string text;
  if (!read_file(path, text)) return input_error("cannot read cubic file '" + path + "'");
  const int status = cs_cubic_from_json(text.c_str(), cubic);
  if (status != CS_OK) std::cerr << "error: " << path << ": " << cs_last_error() << "\n";
  return status;
}

// Writes the JSON result and maps the status to the process exit code.
int finish(const char* what, int status, char* json, const Common& c) {
  if (json) {
    if (c.out.empty()) {
      std::cout << json << "\n";
    } else {
      std::ofstream f(c.out);
      if (!f) {
        cs_string_free(json);
        return input_error("cannot write '" + c.out + "'");
      }
      f << json << "\n";
    }
    cs_string_free(json);
  }
  if (status == CS_OK)
    std::cerr << what << ": ok\n";
  else
    std::cerr << what << ": exit " << status << ": " << cs_last_error() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubicspray: third-point involutions, lines and spray certificates on cubic hypersurfaces"};
  app.set_version_flag("--version", std::string(cs_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  cs_options_init(&c.opts);
  app.add_option("--backend", c.backend, "Scalar backend")
      ->check(CLI::IsMember({"auto", "rational", "complex"}))
      ->capture_default_str();
  app.add_option("--tol-membership", c.opts.tol_membership, "Relative membership tolerance")->capture_default_str();
  app.add_option("--tol-rank", c.opts.tol_rank, "Rank threshold relative to the largest singular value")
      ->capture_default_str();
  app.add_option("--cluster-radius", c.opts.cluster_radius, "Root clustering radius")->capture_default_str();
  app.add_option("--retries", c.opts.retries, "Resample limit")->capture_default_str();
  app.add_option("--seed", c.opts.seed, "Seed")->capture_default_str();
  app.add_option("--out", c.out, "Write JSON here instead of stdout");
  app.add_option("--threads", c.opts.threads, "Suite worker threads (0 = all cores)")->capture_default_str();

  std::string cubic_file, u, x, y, cert_file, suite = "all", corpus;

  auto* tau = app.add_subcommand("tau", "Third point tau_u(x) of X on the line <u, x>");
  tau->add_option("cubic", cubic_file, "Cubic JSON file")->required();
  tau->add_option("u", u, "Point u, e.g. (1:-1:0:0:0)")->required();
  tau->add_option("x", x, "Point x")->required();

  auto* lines = app.add_subcommand("lines", "Lines of X through a point");
  lines->add_option("cubic", cubic_file, "Cubic JSON file")->required();
  lines->add_option("x", x, "Point of X")->required();
  bool spanning = false;
  lines->add_flag("--spanning", spanning, "Report n lines spanning the tangent space (any n)");

  auto* certify = app.add_subcommand("certify", "Build and verify a spray domination certificate at y");
  certify->add_option("cubic", cubic_file, "Cubic JSON file")->required();
  certify->add_option("y", y, "Target point of X")->required();

  auto* verify = app.add_subcommand("verify", "Re-verify a certificate from scratch");
  verify->add_option("certificate", cert_file, "Certificate JSON file")->required();

  auto* suite_cmd = app.add_subcommand("suite", "Run randomized invariant suites");
  suite_cmd->add_option("cubic", cubic_file, "Cubic JSON file");
  suite_cmd->add_option("--suite", suite, "Suite name")
      ->check(CLI::IsMember({"involution", "fixed-points", "bitangency", "lines", "eckardt", "spray", "conic", "all"}))
      ->capture_default_str();
  suite_cmd->add_option("--trials", c.opts.trials, "Trials per suite")->capture_default_str();
  suite_cmd->add_option("--corpus", corpus, "Corpus spec JSON or a file holding it");

  auto* corpus_cmd = app.add_subcommand("corpus", "Print the generated corpus");
  corpus_cmd->add_option("spec", corpus, "Corpus spec JSON or a file holding it")->required();

  // Coordinates such as -1,1,0,0,0 must not be read as options.
  app.allow_extras(false);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return CS_INPUT;
  }

  c.opts.backend = c.backend == "rational" ? CS_BACKEND_RATIONAL
                   : c.backend == "complex" ? CS_BACKEND_COMPLEX
                                            : CS_BACKEND_AUTO;
  c.opts.spanning = spanning ? 1 : 0;

  auto corpus_text = [&](std::string& text) {
    if (read_file(corpus, text)) return true;
    text = corpus;
    return !text.empty();
  };

  char* json = nullptr;
  if (*tau || *lines || *certify) {
    cs_cubic* cubic = nullptr;
    if (int s = load_cubic(cubic_file, &cubic); s != CS_OK) return s;
    int status;
    const char* what;
    if (*tau) {
      status = cs_tau(cubic, u.c_str(), x.c_str(), &c.opts, &json);
      what = "tau";
    } else if (*lines) {
      status = cs_lines(cubic, x.c_str(), &c.opts, &json);
      what = "lines";
    } else {
      status = cs_certify(cubic, y.c_str(), &c.opts, &json);
      what = "certify";
    }
    cs_cubic_free(cubic);
    return finish(what, status, json, c);
  }
  if (*verify) {
    std::string text;
    if (!read_file(cert_file, text)) return input_error("cannot read certificate '" + cert_file + "'");
    const int status = cs_verify(text.c_str(), &c.opts, &json);
    return finish("verify", status, json, c);
  }
  if (*suite_cmd) {
    cs_cubic* cubic = nullptr;
    if (!cubic_file.empty())
      if (int s = load_cubic(cubic_file, &cubic); s != CS_OK) return s;
    std::string spec;
    const bool have_corpus = !corpus.empty() && corpus_text(spec);
    const int status = cs_suite(cubic, have_corpus ? spec.c_str() : nullptr, suite.c_str(), &c.opts, &json);
    cs_cubic_free(cubic);
    return finish("suite", status, json, c);
  }
  std::string spec;
  corpus_text(spec);
  const int status = cs_corpus(spec.c_str(), &c.opts, &json);
  return finish("corpus", status, json, c);
}
