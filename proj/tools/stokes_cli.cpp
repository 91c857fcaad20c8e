// Batch front end: parse a scenario config, run the compute/verify pipelines,
// emit report.json and tables.csv.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <vector>

#include "stokes/formal_model.hpp"
#include "stokes/report.hpp"
#include "stokes/scenario.hpp"
#include "stokes/stokes_matrices.hpp"
#include "stokes/verify.hpp"

namespace {

using namespace stokes;

const char* pair_name(PairCase c) {
  return c == PairCase::Generic ? "generic" : "int_le_minus2";
}
const char* triple_name(TripleCase c) {
  return c == TripleCase::Generic ? "generic" : "int_le_minus4";
}

// widest-gap midpoints between the singular directions: safe probe rays
std::vector<double> midway_directions(const Parameters& p) {
  auto d = singular_directions(p);
  std::sort(d.begin(), d.end());
  std::vector<double> mids;
  for (int k = 0; k < 3; ++k) {
    const double lo = d[static_cast<std::size_t>(k)];
    const double hi = k == 2 ? d[0] + kTwoPi : d[static_cast<std::size_t>(k + 1)];
    mids.push_back(arg_mod_2pi(0.5 * (lo + hi)));
  }
  return mids;
}

struct ScenarioResult {
  nlohmann::json json;
  std::vector<CheckRecord> records;
  bool pass = true;
  int special_exit = 0;  // 3 for excluded/regime diagnostics
  std::string diagnostic;
};

ScenarioResult run_scenario(const Scenario& sc, bool do_verify) {
  ScenarioResult res;
  EngineOptions opt;
  opt.tol_quad = sc.tol.tol_quad;
  opt.int_tol = sc.tol.int_tol;
  nlohmann::json& j = res.json;
  j["name"] = sc.name;

  CaseTag tag;
  try {
    tag = classify(sc.params, sc.tol.int_tol);
  } catch (const Error& e) {
    res.special_exit = 3;
    res.diagnostic = sc.name + ": " + e.what();
    j["error"] = e.what();
    return res;
  }
  j["case"]["pair12"] = pair_name(tag.pair12);
  j["case"]["pair23"] = pair_name(tag.pair23);
  j["case"]["triple13"] = triple_name(tag.triple13);
  j["case"]["excluded"] = tag.excluded;
  j["case"]["regime"] = tag.regime == Regime::ModulusLess ? "modulus_less" : "modulus_equal";
  if (tag.excluded) {
    res.special_exit = 3;
    res.diagnostic = sc.name +
                     ": excluded case alpha3-alpha1 not in Z<=-4, alpha3-alpha2 in Z>=-1, "
                     "alpha2-alpha1 not in Z<=-2 (no non-logarithmic closed form)";
    j["error"] = res.diagnostic;
    return res;
  }

  const auto dirs = singular_directions(sc.params);
  j["directions"] = {dirs[0], dirs[1], dirs[2]};
  const auto fm = formal_monodromy(sc.params);
  const auto ri = exponents_at_infinity(sc.params);
  for (int k = 0; k < 3; ++k) {
    j["formal_monodromy"].push_back({fm[static_cast<std::size_t>(k)].real(), fm[static_cast<std::size_t>(k)].imag()});
    j["exponents_at_infinity"].push_back({ri[static_cast<std::size_t>(k)].real(), ri[static_cast<std::size_t>(k)].imag()});
  }

  StokesData sd;
  try {
    sd = stokes_matrices(sc.params, sc.tol.int_tol);
  } catch (const Error& e) {
    res.special_exit = 3;
    res.diagnostic = sc.name + ": " + e.what();
    j["error"] = e.what();
    return res;
  }
  j["stokes"]["mu1"] = {sd.mu1.real(), sd.mu1.imag()};
  j["stokes"]["mu2"] = {sd.mu2.real(), sd.mu2.imag()};
  j["stokes"]["mu3"] = {sd.mu3.real(), sd.mu3.imag()};
  const Matrix3 mono = monodromy_product(sd);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      j["monodromy_product"].push_back({mono(i, k).real(), mono(i, k).imag()});

  auto add = [&](CheckRecord r) {
    r.name = sc.name + "/" + r.name;
    res.pass = res.pass && r.pass;
    res.records.push_back(std::move(r));
  };

  if (do_verify && sc.tasks.count("verify")) {
    const StokesCheckReport rep = check_stokes(sc.params, sc.tol.tol_verify, opt);
    const char* names[3] = {"mu1", "mu2", "mu3"};
    for (int k = 0; k < 3; ++k) {
      const DirectionCheck& dc = rep.dir[static_cast<std::size_t>(k)];
      add(CheckRecord::make(std::string("stokes/") + names[k], dc.mu_closed, dc.mu_measured,
                            sc.tol.tol_verify));
    }
  }
  if (do_verify && sc.tasks.count("product-sum")) {
    const auto mids = midway_directions(sc.params);
    std::size_t idx = 0;
    for (const Complex& xv : sc.x_samples) {
      const double th = mids[idx % mids.size()];
      ++idx;
      const LogPoint x = LogPoint::from_polar(std::abs(xv), th);
      try {
        const ProductRuleReport pr = check_product_rule(sc.params, th, x, sc.tol.tol_verify, opt);
        add(CheckRecord::make("product-sum/omega-vs-product@" + std::to_string(idx), pr.product,
                              pr.omega, sc.tol.tol_verify));
        add(CheckRecord::make("product-sum/conv-vs-product@" + std::to_string(idx), pr.product,
                              pr.convolution, sc.tol.tol_verify));
      } catch (const HypothesisViolated& e) {
        nlohmann::json note;
        j["notes"].push_back(std::string("product-sum skipped: ") + e.what());
        break;
      }
    }
  }
  if (do_verify && sc.tasks.count("gevrey")) {
    const auto mids = midway_directions(sc.params);
    const FormalSeries f12 = phi_hat(1, 2, sc.params, 24, sc.tol.int_tol);
    const FormalSeries f23 = phi_hat(2, 3, sc.params, 24, sc.tol.int_tol);
    std::vector<LogPoint> xs;
    for (const Complex& xv : sc.x_samples)
      xs.push_back(LogPoint::from_polar(std::abs(xv), mids[0]));
    const auto sum12 = [&](double th, LogPoint x) {
      return phi_sum(1, 2, Ray{th}, x, sc.params, opt).value;
    };
    const auto sum23 = [&](double th, LogPoint x) {
      return phi_sum(2, 3, Ray{th}, x, sc.params, opt).value;
    };
    const GevreyReport g1 = gevrey_check(f12, sum12, mids[0], xs);
    const GevreyReport g2 = gevrey_check(f23, sum23, mids[0], xs);
    add(CheckRecord::bound("gevrey/phi12-violations",
                           static_cast<double>(std::count_if(g1.rows.begin(), g1.rows.end(),
                                                             [](const GevreyCheckRow& r) { return !r.pass; })),
                           0.0));
    add(CheckRecord::bound("gevrey/phi23-violations",
                           static_cast<double>(std::count_if(g2.rows.begin(), g2.rows.end(),
                                                             [](const GevreyCheckRow& r) { return !r.pass; })),
                           0.0));
  }
  if (do_verify && sc.tasks.count("residual")) {
    const auto mids = midway_directions(sc.params);
    std::vector<LogPoint> xs;
    for (const Complex& xv : sc.x_samples)
      xs.push_back(LogPoint::from_polar(std::abs(xv), mids[0]));
    const Parameters& p = sc.params;
    const auto col1 = [&](LogPoint x) { return x.pow(p.a(1)) * std::exp(-p.b(1) * x.inv()); };
    const auto col2 = [&](LogPoint x) {
      return x.pow(p.a(2)) * std::exp(-p.b(2) * x.inv()) * x.pow(2.0) *
             phi_sum(1, 2, Ray{x.arg()}, x, p, opt).value / (p.b(2) - p.b(1));
    };
    const auto col3 = [&](LogPoint x) {
      return x.pow(p.a(3)) * std::exp(-p.b(3) * x.inv()) * x.pow(4.0) *
             phi13_sum(p, Ray{x.arg()}, Ray{x.arg()}, x, opt) /
             ((p.b(3) - p.b(2)) * (p.b(3) - p.b(1)));
    };
    add(CheckRecord::bound("residual/phi1", ode_residual(p, col1, xs), 1e-6));
    add(CheckRecord::bound("residual/phi12", ode_residual(p, col2, xs), 1e-6));
    add(CheckRecord::bound("residual/phi13", ode_residual(p, col3, xs), 1e-6));
  }

  std::sort(res.records.begin(), res.records.end(),
            [](const CheckRecord& l, const CheckRecord& r) { return l.name < r.name; });
  for (const CheckRecord& r : res.records) j["checks"].push_back(record_to_json(r));
  j["pass"] = res.pass;
  return res;
}

int run(const std::string& config_path, const std::string& out_dir, bool do_verify, int jobs,
        double tol_quad_override, double int_tol_override) {
  nlohmann::json cfg;
  std::vector<Scenario> scenarios;
  try {
    std::ifstream in(config_path);
    if (!in) throw InvalidParameters("cannot open config file: " + config_path);
    in >> cfg;
    scenarios = parse_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  for (Scenario& sc : scenarios) {
    if (tol_quad_override > 0) sc.tol.tol_quad = tol_quad_override;
    if (int_tol_override > 0) sc.tol.int_tol = int_tol_override;
  }

  std::vector<ScenarioResult> results(scenarios.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&]() {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (next >= scenarios.size()) return;
        i = next++;
      }
      try {
        results[i] = run_scenario(scenarios[i], do_verify);
      } catch (const std::exception& e) {
        results[i].pass = false;
        results[i].json["name"] = scenarios[i].name;
        results[i].json["error"] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(scenarios.size())));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::filesystem::create_directories(out_dir);
  nlohmann::json report;
  std::vector<CheckRecord> all_records;
  bool all_pass = true;
  int special = 0;
  for (const ScenarioResult& r : results) {
    report["scenarios"].push_back(r.json);
    all_records.insert(all_records.end(), r.records.begin(), r.records.end());
    all_pass = all_pass && r.pass && r.special_exit == 0;
    if (r.special_exit != 0) {
      special = r.special_exit;
      std::cerr << r.diagnostic << "\n";
    }
  }
  report["pass"] = all_pass;
  {
    std::ofstream out(out_dir + "/report.json");
    out << report.dump(2) << "\n";
  }
  write_csv(out_dir + "/tables.csv", all_records);

  for (const CheckRecord& r : all_records)
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  rel_err=" << r.rel_err << "\n";
  if (special != 0) return special;
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Borel-Laplace summation and Stokes matrices for reducible third-order operators"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  int jobs = 1;
  double tol_quad = -1.0, int_tol = -1.0;
  for (const char* name : {"compute", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--jobs", jobs, "parallel scenarios");
    sub->add_option("--tol-quad", tol_quad, "quadrature tolerance override");
    sub->add_option("--int-tol", int_tol, "integer detection tolerance override");
  }
  CLI11_PARSE(app, argc, argv);
  const bool do_verify = app.got_subcommand("verify");
  return run(config_path, out_dir, do_verify, jobs, tol_quad, int_tol);
}
