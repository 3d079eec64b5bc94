#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>

#include "cfd/experiments.hpp"
#include "cfd/rational.hpp"

namespace fs = std::filesystem;
using namespace cfd;

namespace {

struct Output {
  std::string dir;

  bool enabled() const { return !dir.empty(); }

  std::ofstream open(const std::string& name) const {
    fs::create_directories(dir);
    std::ofstream os(fs::path(dir) / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
    return os;
  }

  void write(const std::string& name, const std::string& text) const {
    auto os = open(name);
    os << text;
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_report(const ConvergenceReport& rep) {
  std::cout << rep.label << ":";
  if (rep.fit)
    std::cout << " slope " << num(rep.fit->slope) << ", 1-R^2 " << num(rep.fit->residual) << " over "
              << rep.fit->rows_used << " rows\n";
  else
    std::cout << " fewer than 3 usable rows, no fit\n";
  for (const auto& r : rep.rows)
    std::cout << "  N=" << r.N << "  E_N=" << num(r.error) << "  min|eig|=" << num(r.min_abs_eig) << "  "
              << to_string(r.status) << '\n';
}

std::vector<int> N_list_or(const std::string& text, std::vector<int> fallback) {
  return text.empty() ? fallback : parse_N_list(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact finite-difference schemes for -u'' = f on (0, 1) with u(0) = u(1) = 0"};
  app.require_subcommand(1);

  int l = 2, m = 2;
  std::string mu_mode = "n-2";
  std::string conv_N, res_N = "50:500:10", rnd_N = "16,32,64,128,256", liou_N;
  std::string conv_problem = "oscillatory", res_problem = "exp2x";
  std::uint64_t seed = 1;
  Output out;

  auto* optimal = app.add_subcommand("optimal", "Optimal pair (d, s) with boundary corrections, as exact rationals");
  optimal->add_option("--l", l, "tau(d) - 1")->check(CLI::NonNegativeNumber);
  optimal->add_option("--m", m, "tau(s)")->check(CLI::NonNegativeNumber);
  optimal->add_option("--mu-mode", mu_mode, "boundary order")->check(CLI::IsMember({"n", "n-2"}));
  optimal->add_option("--out", out.dir, "write scheme.json here");

  auto* conv = app.add_subcommand("convergence", "Error E_N of an optimal scheme on a manufactured problem");
  conv->add_option("--l", l)->check(CLI::NonNegativeNumber);
  conv->add_option("--m", m)->check(CLI::NonNegativeNumber);
  conv->add_option("--mu-mode", mu_mode)->check(CLI::IsMember({"n", "n-2"}));
  conv->add_option("--problem", conv_problem, "oscillatory, exp2x, sin, quadratic")->capture_default_str();
  conv->add_option("--N-list", conv_N, "comma list, start:stop:step ranges allowed (default: 200, 235, ..., 500)");
  conv->add_option("--out", out.dir, "write scheme.json, convergence.csv, plot.gp here");

  std::string z_text = "0.358946420670826";
  int n_order = 2;
  auto* res = app.add_subcommand("resonance", "d = a against d = (2-6z, 4z-1, -z)");
  res->add_option("--z", z_text, "decimal or p/q")->capture_default_str();
  res->add_option("--n", n_order, "interior order of both schemes")->capture_default_str();
  res->add_option("--problem", res_problem)->capture_default_str();
  res->add_option("--N-list", res_N)->capture_default_str();
  res->add_option("--out", out.dir, "write convergence.csv, stability.csv, plot.gp here");

  std::string field = "complex";
  int samples = 1000;
  auto* rnd = app.add_subcommand("random-stability", "Monte-Carlo over R with i.i.d. normal coefficients");
  rnd->add_option("--l", l, "degree of R")->check(CLI::NonNegativeNumber);
  rnd->add_option("--field", field)->check(CLI::IsMember({"real", "complex"}))->capture_default_str();
  rnd->add_option("--samples,-M", samples)->check(CLI::PositiveNumber)->capture_default_str();
  rnd->add_option("--seed", seed)->capture_default_str();
  rnd->add_option("--N-list", rnd_N)->capture_default_str();
  rnd->add_option("--out", out.dir, "write stability.csv here");

  std::string alpha_text = "-1,1,2,1";
  int max_N = 2000;
  auto* liou = app.add_subcommand("liouville", "Relative stability of X (X - 4 sin^2(pi alpha / 2))");
  liou->add_option("--alpha", alpha_text, "p,q,r,s for (p + q sqrt(r)) / s")->capture_default_str();
  liou->add_option("--N-list", liou_N, "default: geometric grid plus convergent denominators");
  liou->add_option("--max-N", max_N, "range of the default N-list")->check(CLI::Range(2, kMaxInverseNormN))
      ->capture_default_str();
  liou->add_option("--out", out.dir, "write stability.csv, plot.gp here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*optimal) {
      const auto mu = boundary_order(2 * (l + m + 1), parse_mu_mode(mu_mode));
      const auto scheme = Scheme::optimal(l, m, mu);
      const auto json = scheme_json(scheme, l, m).dump(2);
      std::cout << json << '\n';
      if (out.enabled()) out.write("scheme.json", json + "\n");
    } else if (*conv) {
      const int n = 2 * (l + m + 1);
      const auto scheme = Scheme::optimal(l, m, boundary_order(n, parse_mu_mode(mu_mode)));
      const auto& prob = manufactured_problem(conv_problem);
      const auto Ns = N_list_or(conv_N, default_convergence_N_list());
      const std::string label = "l" + std::to_string(l) + "m" + std::to_string(m);
      const auto rep = run_convergence(scheme, prob, Ns, label);
      print_report(rep);
      if (out.enabled()) {
        out.write("scheme.json", scheme_json(scheme, l, m).dump(2) + "\n");
        auto os = out.open("convergence.csv");
        write_convergence_csv(os, {rep});
        out.write("plot.gp", convergence_plot_script({rep}, prob.formula + ", n = " + std::to_string(n)));
      }
    } else if (*res) {
      const auto z = parse_rational(z_text);
      const auto& prob = manufactured_problem(res_problem);
      const auto cmp = run_resonance(z, n_order, prob, parse_N_list(res_N));
      print_report(cmp.reference);
      print_report(cmp.resonant);
      std::cout << "min |eigenvalue| over the sweep: reference " << num(cmp.min_eig_reference) << ", resonant "
                << num(cmp.min_eig_resonant) << "\nmin |1 - z mu_k| over the sweep: " << num(cmp.min_root_gap) << '\n';
      if (out.enabled()) {
        auto c = out.open("convergence.csv");
        write_convergence_csv(c, {cmp.reference, cmp.resonant});
        auto s = out.open("stability.csv");
        write_resonance_stability_csv(s, cmp);
        out.write("plot.gp", convergence_plot_script({cmp.reference, cmp.resonant},
                                                     prob.formula + ", z = " + z_text + ", n = " + std::to_string(n_order)));
      }
    } else if (*rnd) {
      const auto f = field == "real" ? Field::real : Field::complex;
      const auto summary = run_random_stability(l, f, samples, seed, parse_N_list(rnd_N));
      std::cout << "l = " << l << ", field = " << field << ", M = " << samples << ", seed = " << seed << '\n'
                << "samples with a real root of R in [0, 4]: " << summary.roots_in_interval << " (fraction "
                << num(summary.fraction()) << ")\n";
      if (out.enabled()) {
        auto os = out.open("stability.csv");
        write_random_stability_csv(os, summary);
        out.write("plot.gp", stability_plot_script("random formulas, l = " + std::to_string(l) + ", " + field, "1:4",
                                                   "min |eigenvalue|"));
      }
    } else if (*liou) {
      const auto alpha = QuadraticIrrational::parse(alpha_text);
      const auto Ns = N_list_or(liou_N, liouville_N_list(alpha, max_N));
      const auto rep = run_liouville(alpha, Ns);
      std::cout << "alpha = " << num(alpha.value()) << ", lambda = " << num(to_double(rep.lambda)) << '\n'
                << "inf_N c_N = " << num(rep.relative.infimum) << " at N = " << rep.relative.argmin_N << '\n'
                << "min_N (N+1)^2 delta_{N+1} = " << num(rep.min_q2_delta) << '\n';
      if (out.enabled()) {
        auto os = out.open("stability.csv");
        write_relative_stability_csv(os, rep);
        out.write("plot.gp", stability_plot_script("relative stability constant, eta_N = h^-2", "1:5", "c_N"));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
