#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "cpswf/asymptotics.hpp"
#include "cpswf/cpswf.hpp"
#include "cpswf/errors.hpp"
#include "cpswf/verify.hpp"

namespace cpswf::cli {

namespace {

struct RunConfig {
  double alpha = 0.0;
  double c = 1.0;
  int nmax = 20;
  int n = 0;
  int J = 200;
  int rule_size = 512;
  int grid_size = 500;
  std::string suite = "all";
  std::string out_path;
  std::string format = "csv";
  bool serial = false;
  int threads = 0;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void validate(const RunConfig& c) {
  if (!(c.alpha >= -0.5)) throw UsageError("--alpha must be >= -0.5");
  if (!(c.c > 0.0)) throw UsageError("--c must be positive");
  if (c.nmax < 0 || c.nmax > 200) throw UsageError("--nmax must lie in [0, 200]");
  if (c.n < 0 || c.n > 200) throw UsageError("--n must lie in [0, 200]");
  if (c.J < 1 || 8 * c.J > 4096) throw UsageError("--J must lie in [1, 512]");
  if (c.rule_size < 256 || c.rule_size > 4096) throw UsageError("--rule_size must lie in [256, 4096]");
  if (c.grid_size < 2) throw UsageError("--grid_size must be >= 2");
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.threads < 0) throw UsageError("--threads must be >= 0");
}

// fn(i) for i < count; results are written by index, so order never depends on scheduling
template <class F>
void parallel_for(std::size_t count, const RunConfig& cfg, F&& fn) {
  unsigned t = cfg.serial ? 1u : (cfg.threads > 0 ? unsigned(cfg.threads) : std::thread::hardware_concurrency());
  t = std::max(1u, std::min<unsigned>(t, static_cast<unsigned>(count)));
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < t; ++k)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next++;
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// temp file + rename, or stdout when no path is given
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(cfg.out_path);
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << text;
    if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

nlohmann::ordered_json params_json(const RunConfig& cfg) {
  return {{"alpha", cfg.alpha}, {"c", cfg.c}, {"rule_size", cfg.rule_size}, {"grid_size", cfg.grid_size}};
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  const ProlateParams p{cfg.alpha, cfg.c};
  std::vector<CpswfFunction> fam(static_cast<std::size_t>(cfg.nmax + 1));
  parallel_for(fam.size(), cfg, [&](std::size_t i) { fam[i] = compute(p, static_cast<int>(i)); });
  const char* cols[] = {"n", "chi", "mu", "q", "slepian_lo", "slepian_hi", "improved_lo"};
  std::ostringstream s;
  if (cfg.format == "csv") {
    s << "n,chi,mu,q,slepian_lo,slepian_hi,improved_lo\n";
    for (const auto& f : fam)
      s << f.n << ',' << num(f.chi) << ',' << num(f.mu) << ',' << num(f.q) << ',' << num(slepian_lower(p, f.n)) << ','
        << num(slepian_upper(p, f.n)) << ',' << num(improved_lower(p, f.n, 0.1)) << '\n';
  } else {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = "spectrum";
    j["params"] = params_json(cfg);
    j["columns"] = cols;
    j["rows"] = nlohmann::json::array();
    for (const auto& f : fam)
      j["rows"].push_back({f.n, f.chi, f.mu, f.q, slepian_lower(p, f.n), slepian_upper(p, f.n),
                           improved_lower(p, f.n, 0.1)});
    s << j.dump(2) << '\n';
  }
  emit(cfg, s.str(), out);
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const ProlateParams p{cfg.alpha, cfg.c};
  const CpswfFunction f = compute(p, cfg.n);
  std::vector<double> grid;
  for (int i = 1; i < cfg.grid_size; ++i) grid.push_back(double(i) / cfg.grid_size);
  const bool bessel_ok = f.q <= 0.5;
  ApproxReport b;
  if (bessel_ok) b = bessel_type_approx(f, grid);
  const ApproxReport jac = jacobi_type_approx(f, grid);
  std::ostringstream s;
  if (cfg.format == "csv") {
    s << "x,psi,bessel_approx,bessel_bound,jacobi_approx,jacobi_scaled_residual\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      s << num(grid[i]) << ',' << num(jac.truth[i]) << ',';
      if (bessel_ok) s << num(b.approx[i]) << ',' << num(b.bound[i]);
      else s << ',';
      s << ',' << num(jac.approx[i]) << ',' << num(jac.scaled[i]) << '\n';
    }
  } else {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["command"] = "eval";
    j["params"] = params_json(cfg);
    j["n"] = cfg.n;
    j["chi"] = f.chi;
    j["q"] = f.q;
    j["bessel_amplitude"] = bessel_ok ? nlohmann::ordered_json(b.A) : nlohmann::ordered_json(nullptr);
    j["jacobi_amplitude"] = jac.A;
    j["columns"] = {"x", "psi", "bessel_approx", "bessel_bound", "jacobi_approx", "jacobi_scaled_residual"};
    j["rows"] = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      nlohmann::ordered_json row = {grid[i], jac.truth[i]};
      if (bessel_ok) {
        row.push_back(b.approx[i]);
        row.push_back(b.bound[i]);
      } else {
        row.push_back(nullptr);
        row.push_back(nullptr);
      }
      row.push_back(jac.approx[i]);
      row.push_back(jac.scaled[i]);
      j["rows"].push_back(row);
    }
    s << j.dump(2) << '\n';
  }
  emit(cfg, s.str(), out);
  return kOk;
}

nlohmann::ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyConfig vc;
  vc.params = {cfg.alpha, cfg.c};
  vc.nmax = cfg.nmax;
  vc.rule_size = cfg.rule_size;
  vc.grid_size = cfg.grid_size;
  vc.J = cfg.J;
  const CheckPlan plan = plan_checks(cfg.suite, vc);
  std::vector<CheckResult> res(plan.names.size());
  parallel_for(res.size(), cfg, [&](std::size_t i) { res[i] = plan.run(i); });

  bool all_ok = true;
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["command"] = "verify";
  j["suite"] = cfg.suite;
  j["params"] = params_json(cfg);
  j["params"]["nmax"] = cfg.nmax;
  j["params"]["J"] = cfg.J;
  j["checks"] = nlohmann::json::array();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& r : res) {
    nlohmann::ordered_json c;
    c["name"] = r.name;
    c["status"] = to_string(r.status);
    c["worst_margin"] = r.status == CheckStatus::skipped ? nlohmann::ordered_json(nullptr) : finite_or_null(r.worst_margin);
    nlohmann::ordered_json par = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) par[k] = finite_or_null(v);
    c["parameters"] = par;
    if (!r.note.empty()) c["note"] = r.note;
    j["checks"].push_back(c);
    summary[r.name] = to_string(r.status);
    if (r.status == CheckStatus::fail) all_ok = false;
  }
  j["summary"] = summary;
  j["status"] = all_ok ? "pass" : "fail";
  emit(cfg, j.dump(2) + "\n", out);
  return all_ok ? kOk : kVerifyFailed;
}

}  // namespace

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Circular prolate spheroidal wave functions: spectra, evaluation and verification", "cpswf"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key = value file; flags given on the command line take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("--alpha", cfg.alpha, "Bessel order alpha >= -1/2");
  app.add_option("--c", cfg.c, "bandwidth c > 0");
  app.add_option("--nmax", cfg.nmax, "highest index n (spectrum, verify)");
  app.add_option("--n", cfg.n, "index of the eigenfunction (eval)");
  app.add_option("--J", cfg.J, "Fourier-Bessel terms for truncation studies");
  app.add_option("--rule_size,--rule-size", cfg.rule_size, "Gauss-Legendre nodes");
  app.add_option("--grid_size,--grid-size", cfg.grid_size, "evaluation grid size");
  app.add_option("--out,--out_path", cfg.out_path, "output file (default stdout)");
  app.add_option("--format", cfg.format, "csv or json (spectrum, eval)");
  app.add_option("--suite", cfg.suite, "orthonormality, bounds, approximations, decay, truncation, all");
  app.add_flag("--serial", cfg.serial, "single-threaded, deterministic order");
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  auto* spectrum = app.add_subcommand("spectrum", "chi_n, mu_n and eigenvalue bounds for n = 0..nmax");
  auto* eval = app.add_subcommand("eval", "psi_n and its uniform approximations on a grid");
  auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON report");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    validate(cfg);
    if (verify->parsed() && !is_suite(cfg.suite)) throw UsageError("unknown suite: " + cfg.suite);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(cfg, out);
    if (eval->parsed()) return cmd_eval(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumeric;
  }
}

}  // namespace cpswf::cli
