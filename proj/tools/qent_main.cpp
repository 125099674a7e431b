// Thin shell over the qent C API: assembles one JSON request per subcommand,
// forwards it, and writes the library's byte-stable response verbatim.
// Exit codes: 0 all checks passed, 1 a verified inequality or residual check
// failed (report still emitted when available), 2 input or usage error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qent/qent.h"

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Incremental JSON-object assembly for requests; values we splice in are
// either fully controlled or themselves JSON documents the library reparses.
class Request {
 public:
  Request& raw(const std::string& key, const std::string& json_text) {
    sep();
    body_ += quoted(key) + ":" + json_text;
    return *this;
  }
  Request& str(const std::string& key, const std::string& v) {
    return raw(key, quoted(v));
  }
  Request& real(const std::string& key, double v) { return raw(key, num(v)); }
  Request& integer(const std::string& key, long long v) {
    return raw(key, std::to_string(v));
  }
  Request& unsigned_integer(const std::string& key, std::uint64_t v) {
    return raw(key, std::to_string(v));
  }
  Request& boolean(const std::string& key, bool v) {
    return raw(key, v ? "true" : "false");
  }
  Request& reals(const std::string& key, const std::vector<double>& v) {
    std::string arr = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i > 0) arr += ",";
      arr += num(v[i]);
    }
    arr += "]";
    return raw(key, arr);
  }
  Request& integers(const std::string& key, const std::vector<int>& v) {
    std::string arr = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i > 0) arr += ",";
      arr += std::to_string(v[i]);
    }
    arr += "]";
    return raw(key, arr);
  }
  std::string finish() const { return "{" + body_ + "}"; }

 private:
  void sep() {
    if (!body_.empty()) body_ += ",";
  }
  std::string body_;
};

struct CommonFlags {
  double tol = 0.0;
  bool tol_set = false;
  std::string base = "2";
  std::string format = "json";
  std::string out_path;
};

// --tol wins; otherwise the CE_TOL environment variable; otherwise defaults.
bool apply_tolerance(Request& req, const CommonFlags& cf, std::string* err) {
  if (cf.tol_set) {
    req.real("tol", cf.tol);
    return true;
  }
  const char* env = std::getenv("CE_TOL");
  if (env == nullptr || *env == '\0') return true;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == nullptr || *end != '\0' || !(v > 0.0)) {
    *err = "CE_TOL is not a positive number: " + std::string(env);
    return false;
  }
  req.real("tol", v);
  return true;
}

int exit_code(qent_status s) {
  if (s == QENT_OK) return 0;
  if (s == QENT_CHECK_FAILED || s == QENT_VERIFICATION_FAILED) return 1;
  return 2;
}

int dispatch(qent_status (*op)(const char*, char**), const Request& req,
             const CommonFlags& cf) {
  char* text = nullptr;
  const qent_status st = op(req.finish().c_str(), &text);
  if (text != nullptr) {
    if (cf.out_path.empty()) {
      std::fwrite(text, 1, std::strlen(text), stdout);
      std::fflush(stdout);
    } else {
      std::ofstream out(cf.out_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << cf.out_path << "\n";
        qent_string_free(text);
        return 2;
      }
      out << text;
    }
    qent_string_free(text);
  }
  if (st != QENT_OK && st != QENT_CHECK_FAILED) {
    std::cerr << "error (" << qent_status_name(st) << "): " << qent_last_error()
              << "\n";
  }
  return exit_code(st);
}

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

void add_common(CLI::App* sub, CommonFlags* cf, bool with_format) {
  sub->add_option("--tol", cf->tol, "validation tolerance applied to all checks")
      ->check(CLI::PositiveNumber)
      ->each([cf](const std::string&) { cf->tol_set = true; });
  sub->add_option("--out", cf->out_path, "write the report here instead of stdout");
  if (with_format) {
    sub->add_option("--format", cf->format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy principles, max-entropy estimation, compression and "
               "single-shot transition constructions on density matrices"};
  app.require_subcommand(1);
  int rc = 0;

  // entropy
  {
    auto* sub = app.add_subcommand("entropy", "entropy of a density matrix");
    auto cf = std::make_shared<CommonFlags>();
    auto state_path = std::make_shared<std::string>();
    auto measure = std::make_shared<std::string>("vn");
    sub->add_option("state", *state_path, "density matrix JSON file")->required();
    sub->add_option("--measure", *measure, "vn | renyi:A | tsallis:Q");
    sub->add_option("--base", cf->base, "logarithm base")
        ->check(CLI::IsMember({"2", "e"}));
    add_common(sub, cf.get(), false);
    sub->callback([&rc, cf, state_path, measure]() {
      const auto text = read_file(*state_path);
      if (!text) { rc = fail_usage("cannot read " + *state_path); return; }
      Request req;
      req.raw("state", *text).str("measure", *measure).str("base", cf->base);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_entropy_op, req, *cf);
    });
  }

  // dephase
  {
    auto* sub = app.add_subcommand("dephase", "pinch a state in a basis");
    auto cf = std::make_shared<CommonFlags>();
    auto state_path = std::make_shared<std::string>();
    auto basis_path = std::make_shared<std::string>();
    sub->add_option("state", *state_path, "density matrix JSON file")->required();
    sub->add_option("basis", *basis_path, "basis JSON file (columns)")->required();
    add_common(sub, cf.get(), false);
    sub->callback([&rc, cf, state_path, basis_path]() {
      const auto state = read_file(*state_path);
      if (!state) { rc = fail_usage("cannot read " + *state_path); return; }
      const auto basis = read_file(*basis_path);
      if (!basis) { rc = fail_usage("cannot read " + *basis_path); return; }
      Request req;
      req.raw("state", *state).raw("basis", *basis);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_dephase_op, req, *cf);
    });
  }

  // verify-principles
  {
    auto* sub = app.add_subcommand(
        "verify-principles",
        "sample bases and check the dephasing-entropy principles");
    auto cf = std::make_shared<CommonFlags>();
    auto state_path = std::make_shared<std::string>();
    auto measure = std::make_shared<std::string>("vn");
    auto samples = std::make_shared<int>(100);
    auto seed = std::make_shared<std::uint64_t>(1);
    sub->add_option("state", *state_path, "density matrix JSON file")->required();
    sub->add_option("--measure", *measure, "vn | renyi:A | tsallis:Q");
    sub->add_option("--samples", *samples, "bases per principle")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", *seed, "RNG seed");
    sub->add_option("--base", cf->base, "logarithm base")
        ->check(CLI::IsMember({"2", "e"}));
    add_common(sub, cf.get(), false);
    sub->callback([&rc, cf, state_path, measure, samples, seed]() {
      const auto text = read_file(*state_path);
      if (!text) { rc = fail_usage("cannot read " + *state_path); return; }
      Request req;
      req.raw("state", *text)
          .str("measure", *measure)
          .str("base", cf->base)
          .integer("samples", *samples)
          .unsigned_integer("seed", *seed);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_verify_principles, req, *cf);
    });
  }

  // maxent
  {
    auto* sub = app.add_subcommand(
        "maxent", "max-entropy spectrum estimate from dephased observations");
    auto cf = std::make_shared<CommonFlags>();
    auto problem_path = std::make_shared<std::string>();
    auto measure = std::make_shared<std::string>();
    auto oracle = std::make_shared<bool>(false);
    auto relaxed = std::make_shared<bool>(false);
    sub->add_option("problem", *problem_path,
                    "JSON file with q (observed weights) and alpha (overlaps)")
        ->required();
    sub->add_option("--measure", *measure,
                    "override the problem file's measure");
    sub->add_flag("--oracle", *oracle, "also run the brute-force grid oracle");
    sub->add_flag("--relaxed", *relaxed,
                  "also run the single-constraint closed-form solver");
    add_common(sub, cf.get(), false);
    sub->callback([&rc, cf, problem_path, measure, oracle, relaxed]() {
      const auto text = read_file(*problem_path);
      if (!text) { rc = fail_usage("cannot read " + *problem_path); return; }
      Request req;
      req.raw("problem", *text);
      if (!measure->empty()) req.str("measure", *measure);
      req.boolean("oracle", *oracle).boolean("relaxed", *relaxed);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_maxent, req, *cf);
    });
  }

  // transition
  {
    auto* sub = app.add_subcommand(
        "transition", "construct a single-shot state transition plan");
    auto cf = std::make_shared<CommonFlags>();
    auto source_path = std::make_shared<std::string>();
    auto target_path = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("noisy");
    auto epsilon = std::make_shared<double>(0.0);
    auto catalyst_dim = std::make_shared<int>(0);
    auto budget = std::make_shared<int>(0);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto emit_unitary = std::make_shared<bool>(false);
    sub->add_option("source", *source_path, "source density matrix JSON")->required();
    sub->add_option("target", *target_path, "target density matrix JSON")->required();
    sub->add_option("--mode", *mode, "construction to run")
        ->check(CLI::IsMember({"noisy", "catalytic", "approx", "probabilistic"}));
    sub->add_option("--epsilon", *epsilon, "residual budget (approx mode)");
    sub->add_option("--catalyst-dim", *catalyst_dim,
                    "catalyst dimension for the numerical search (catalytic)");
    sub->add_option("--budget", *budget,
                    "search iterations (catalytic) or ancilla padding "
                    "(probabilistic)");
    sub->add_option("--seed", *seed, "RNG seed for the catalyst search");
    sub->add_flag("--emit-unitary", *emit_unitary,
                  "include stage unitaries in the plan JSON");
    add_common(sub, cf.get(), false);
    sub->callback([&rc, cf, source_path, target_path, mode, epsilon,
                   catalyst_dim, budget, seed, emit_unitary]() {
      const auto source = read_file(*source_path);
      if (!source) { rc = fail_usage("cannot read " + *source_path); return; }
      const auto target = read_file(*target_path);
      if (!target) { rc = fail_usage("cannot read " + *target_path); return; }
      Request req;
      req.raw("source", *source)
          .raw("target", *target)
          .str("mode", *mode)
          .unsigned_integer("seed", *seed)
          .boolean("emit_unitary", *emit_unitary);
      if (*epsilon > 0.0) req.real("epsilon", *epsilon);
      if (*catalyst_dim > 0) req.integer("catalyst_dim", *catalyst_dim);
      if (*budget > 0) req.integer("budget", *budget);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_transition, req, *cf);
    });
  }

  // compress
  {
    auto* sub = app.add_subcommand(
        "compress", "typical-subspace fidelity across block lengths and rates");
    auto cf = std::make_shared<CommonFlags>();
    auto state_path = std::make_shared<std::string>();
    auto basis_path = std::make_shared<std::string>();
    auto lengths = std::make_shared<std::vector<int>>();
    auto rates = std::make_shared<std::vector<double>>();
    sub->add_option("state", *state_path, "density matrix JSON file")->required();
    sub->add_option("basis", *basis_path, "dephasing basis JSON file")->required();
    sub->add_option("--n", *lengths, "block lengths")
        ->required()
        ->delimiter(',');
    sub->add_option("--rate", *rates, "rates in bits per copy")
        ->required()
        ->delimiter(',');
    add_common(sub, cf.get(), true);
    sub->callback([&rc, cf, state_path, basis_path, lengths, rates]() {
      const auto state = read_file(*state_path);
      if (!state) { rc = fail_usage("cannot read " + *state_path); return; }
      const auto basis = read_file(*basis_path);
      if (!basis) { rc = fail_usage("cannot read " + *basis_path); return; }
      Request req;
      req.raw("state", *state)
          .raw("basis", *basis)
          .integers("lengths", *lengths)
          .reals("rates", *rates)
          .str("format", cf->format);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_compress, req, *cf);
    });
  }

  // network-chain
  {
    auto* sub = app.add_subcommand(
        "network-chain", "node entropies of a chain of pure bipartite links");
    auto cf = std::make_shared<CommonFlags>();
    auto links_path = std::make_shared<std::string>();
    sub->add_option("links", *links_path,
                    "JSON file: array of squared-Schmidt-weight arrays")
        ->required();
    add_common(sub, cf.get(), false);
    sub->callback([&rc, cf, links_path]() {
      const auto text = read_file(*links_path);
      if (!text) { rc = fail_usage("cannot read " + *links_path); return; }
      Request req;
      req.raw("links", *text);
      std::string err;
      if (!apply_tolerance(req, *cf, &err)) { rc = fail_usage(err); return; }
      rc = dispatch(qent_chain_network, req, *cf);
    });
  }

  // models
  {
    auto* models = app.add_subcommand("models", "reference physical models");
    models->require_subcommand(1);

    auto* thermal = models->add_subcommand(
        "thermal", "truncated thermal-mode entropy convergence");
    {
      auto cf = std::make_shared<CommonFlags>();
      auto nbar = std::make_shared<double>(1.0);
      auto cutoffs = std::make_shared<std::vector<int>>(std::vector<int>{4, 8, 16, 32, 64});
      auto measure = std::make_shared<std::string>("vn");
      thermal->add_option("--nbar", *nbar, "mean occupation")->required();
      thermal->add_option("--N-list", *cutoffs, "truncation top indices")
          ->delimiter(',');
      thermal->add_option("--measure", *measure, "vn | renyi:A | tsallis:Q");
      thermal->add_option("--base", cf->base, "logarithm base")
          ->check(CLI::IsMember({"2", "e"}));
      add_common(thermal, cf.get(), true);
      thermal->callback([&rc, cf, nbar, cutoffs, measure]() {
        Request req;
        req.str("kind", "thermal")
            .real("nbar", *nbar)
            .integers("cutoffs", *cutoffs)
            .str("measure", *measure)
            .str("base", cf->base)
            .str("format", cf->format);
        rc = dispatch(qent_models, req, *cf);
      });
    }

    auto* gaussian = models->add_subcommand(
        "gaussian", "symplectic spectrum and entropy of a covariance matrix");
    {
      auto cf = std::make_shared<CommonFlags>();
      auto cov_path = std::make_shared<std::string>();
      auto lambda = std::make_shared<double>(-1.0);
      gaussian->add_option("--cov", *cov_path,
                           "JSON file: covariance rows in (x,p) ordering")
          ->required();
      gaussian->add_option("--lambda", *lambda,
                           "also mix with vacuum on a beamsplitter of this "
                           "transmissivity");
      add_common(gaussian, cf.get(), false);
      gaussian->callback([&rc, cf, cov_path, lambda]() {
        const auto cov = read_file(*cov_path);
        if (!cov) { rc = fail_usage("cannot read " + *cov_path); return; }
        Request req;
        req.str("kind", "gaussian").raw("cov", *cov);
        if (*lambda >= 0.0) req.real("lambda", *lambda);
        rc = dispatch(qent_models, req, *cf);
      });
    }

    auto* spin = models->add_subcommand(
        "spin", "central spin cluster dephased by an outer bath");
    {
      auto cf = std::make_shared<CommonFlags>();
      auto m = std::make_shared<int>(1);
      auto n = std::make_shared<int>(1);
      auto omega_path = std::make_shared<std::string>();
      auto times = std::make_shared<std::vector<double>>();
      spin->add_option("--m", *m, "cluster size")->required();
      spin->add_option("--n", *n, "outer spin count")->required();
      spin->add_option("--omega", *omega_path,
                       "JSON file: m x n coupling table")
          ->required();
      spin->add_option("--T-list", *times, "evolution times")
          ->required()
          ->delimiter(',');
      add_common(spin, cf.get(), true);
      spin->callback([&rc, cf, m, n, omega_path, times]() {
        const auto omega = read_file(*omega_path);
        if (!omega) { rc = fail_usage("cannot read " + *omega_path); return; }
        Request req;
        req.str("kind", "spin")
            .integer("cluster", *m)
            .integer("outer", *n)
            .raw("couplings", *omega)
            .reals("times", *times)
            .str("format", cf->format);
        rc = dispatch(qent_models, req, *cf);
      });
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return rc;
}
