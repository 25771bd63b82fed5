#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tubeband/tubeband.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_acceptance = 5;

struct Failure {
  int code;
  std::string message;
};

int exit_code_for(tb_status st) {
  switch (st) {
    case TB_OK: return exit_ok;
    case TB_REGIME_VIOLATION: return 3;
    case TB_UNDER_RESOLVED: return 4;
    case TB_ACCEPTANCE_FAILED: return exit_acceptance;
    case TB_INVALID_ARGUMENT:
    case TB_UNSUPPORTED:
    case TB_EDGE_AMBIGUITY:
    case TB_POLE: return exit_input;
    default: return 1;
  }
}

void check(tb_status st) {
  if (st != TB_OK) throw Failure{exit_code_for(st), tb_last_error()};
}

std::string take(tb_text* t) {
  std::string s(tb_text_data(t), tb_text_size(t));
  tb_text_free(t);
  return s;
}

struct RunConfig {
  double A = 0.0;
  bool A_set = false;
  double delta = 0.0;
  double delta_eps2 = 0.0;
  bool delta_eps2_set = false;
  double eps = 1.0;
  double t = 0.7;
  std::vector<double> eps_list{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  std::vector<std::string> z_list{"1i"};
  std::vector<int> n_list{200};
  int kmax = 2;
  bool kmax_set = false;
  int grid = 401;
  int tau_points = 257;
  int points = 21;
  int jobs = 0;
  bool no_refine = false;
  std::string suite = "all";
  std::string format;
  std::string output;
};

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw Failure{exit_input, "empty complex value"};
  auto number = [&](const std::string& part, bool imaginary) {
    std::string p = part;
    if (imaginary) {
      if (p == "" || p == "+") return 1.0;
      if (p == "-") return -1.0;
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      throw Failure{exit_input, "cannot parse complex value '" + text + "'"};
    }
    if (used != p.size()) throw Failure{exit_input, "cannot parse complex value '" + text + "'"};
    return v;
  };
  if (s.back() != 'i' && s.back() != 'j') return {number(s, false), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
  if (split == std::string::npos) return {0.0, number(s, true)};
  return {number(s.substr(0, split), false), number(s.substr(split), true)};
}

nlohmann::ordered_json csv_to_json(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  std::vector<std::string> header;
  auto rows = nlohmann::ordered_json::array();
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::istringstream ls(l);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    return cells;
  };
  if (std::getline(is, line)) header = split(line);
  while (std::getline(is, line)) {
    const auto cells = split(line);
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) {
      char* end = nullptr;
      const double v = std::strtod(cells[i].c_str(), &end);
      if (end && *end == '\0' && !cells[i].empty()) {
        if (cells[i].find_first_of(".eE") == std::string::npos) row[header[i]] = static_cast<long long>(v);
        else row[header[i]] = v;
      } else {
        row[header[i]] = cells[i];
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw Failure{exit_input, "cannot open output file " + cfg.output};
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string tabular(const RunConfig& cfg, const std::string& csv) {
  if (cfg.format.empty() || cfg.format == "csv") return csv;
  return csv_to_json(csv).dump(2);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw Failure{exit_input, std::string(name) + " must be a finite real"};
}

int cmd_bands(const RunConfig& cfg) {
  require_finite(cfg.A, "--A");
  tb_text* out = nullptr;
  check(tb_bands_csv(cfg.A, cfg.kmax, &out));
  write_output(cfg, tabular(cfg, take(out)));
  return exit_ok;
}

int cmd_dispersion(const RunConfig& cfg) {
  require_finite(cfg.A, "--A");
  tb_text* out = nullptr;
  check(tb_dispersion_csv(cfg.A, cfg.kmax, cfg.grid, &out));
  write_output(cfg, tabular(cfg, take(out)));
  return exit_ok;
}

int cmd_fig2(const RunConfig& cfg) {
  const double A = cfg.A_set ? cfg.A : 4.0 * std::numbers::pi / 9.0;
  require_finite(A, "--A");
  tb_text* out = nullptr;
  check(tb_fig2_csv(A, cfg.grid, &out));
  write_output(cfg, tabular(cfg, take(out)));
  return exit_ok;
}

int cmd_critical(const RunConfig& cfg) {
  double Ap = 0, Am = 0;
  check(tb_critical_potentials(&Ap, &Am));
  const double A = cfg.A_set ? cfg.A : Ap;
  require_finite(A, "--A");
  tb_text* out = nullptr;
  if (cfg.format == "csv") {
    check(tb_mu_scan_csv(0.0, std::numbers::pi / 2.0, cfg.points, &out));
  } else {
    check(tb_critical_json(A, 0.0, std::numbers::pi / 2.0, cfg.points, &out));
  }
  write_output(cfg, take(out));
  return exit_ok;
}

int cmd_homog(const RunConfig& cfg) {
  require_finite(cfg.delta, "--delta");
  tb_text* out = nullptr;
  check(tb_homog_json(cfg.delta, cfg.eps, &out));
  write_output(cfg, take(out));
  return exit_ok;
}

bool suite_dispersion(const RunConfig& cfg, std::ostream& log) {
  const double A = cfg.A_set ? cfg.A : 0.0;
  const int kmax = cfg.kmax_set ? cfg.kmax : 5;
  bool ok = true;
  for (int n : cfg.n_list) {
    double dev = 0, rel = 0, dev2 = 0, rel2 = 0;
    check(tb_dispersion_check(A, cfg.t, n, kmax, &dev, &rel));
    check(tb_dispersion_check(A, cfg.t, 2 * n + 1, kmax, &dev2, &rel2));
    const double ratio = dev2 > 0 ? dev / dev2 : 0.0;
    const bool pass = dev < 1e-3 && ratio >= 3.5 && ratio <= 4.5;
    ok = ok && pass;
    log << "dispersion A=" << A << " t=" << cfg.t << " n=" << n << " kmax=" << kmax << " max_dev=" << dev
        << " refinement_ratio=" << ratio << (pass ? " PASS" : " FAIL") << '\n';
  }
  return ok;
}

bool suite_krein(const RunConfig& cfg, std::ostream& log) {
  const double A = cfg.A_set ? cfg.A : 0.0;
  std::vector<int> ns = cfg.n_list;
  if (ns.size() == 1 && ns[0] == 200) ns = {100, 200, 400};
  bool ok = true;
  double prev = INFINITY;
  for (const auto& zs : cfg.z_list) {
    const auto z = parse_complex(zs == "1i" ? "2i" : zs);
    prev = INFINITY;
    for (int n : ns) {
      double res = 0, second = 0, first = 0;
      check(tb_krein_check(A, cfg.t, z.real(), z.imag(), n, &res, &second, &first));
      const bool pass = res < prev && second < 1e-10 && first < 1e-10 && std::abs(second - first) < 1e-10;
      ok = ok && pass;
      prev = res;
      log << "krein A=" << A << " t=" << cfg.t << " z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
          << "i n=" << n << " residual=" << res << " second_form_gap=" << second << " first_form_gap=" << first
          << (pass ? " PASS" : " FAIL") << '\n';
    }
    ok = ok && prev < 5e-2;
  }
  return ok;
}

int suite_converge(const RunConfig& cfg, std::ostream& log) {
  std::vector<double> zr, zi;
  for (const auto& s : cfg.z_list) {
    const auto z = parse_complex(s);
    zr.push_back(z.real());
    zi.push_back(z.imag());
  }
  tb_sweep_config c{};
  c.delta = cfg.delta;
  c.delta_scales_with_eps2 = cfg.delta_eps2_set ? 1 : 0;
  c.delta_per_eps2 = cfg.delta_eps2;
  c.eps = cfg.eps_list.data();
  c.eps_count = cfg.eps_list.size();
  c.z_re = zr.data();
  c.z_im = zi.data();
  c.z_count = zr.size();
  c.tau_points = cfg.tau_points;
  c.n = cfg.n_list.front();
  c.jobs = cfg.jobs;
  c.check_refinement = cfg.no_refine ? 0 : 1;
  tb_text* csv = nullptr;
  tb_text* summary = nullptr;
  int accepted = 0;
  const tb_status st = tb_convergence_sweep(&c, &csv, &summary, &accepted);
  if (st != TB_OK && st != TB_UNDER_RESOLVED) check(st);
  const std::string csv_text = take(csv), json_text = take(summary);
  if (cfg.output.empty()) {
    std::cout << csv_text << json_text << '\n';
  } else {
    write_output(cfg, csv_text);
    std::ofstream(cfg.output + ".json", std::ios::binary) << json_text << '\n';
  }
  const auto j = nlohmann::json::parse(json_text);
  if (j.contains("slope")) log << "converge slope=" << j["slope"].get<double>() << '\n';
  log << "converge " << j["verdict"].get<std::string>() << '\n';
  if (st == TB_UNDER_RESOLVED) {
    log << "converge under-resolved: " << tb_last_error() << '\n';
    return 4;
  }
  return accepted ? exit_ok : exit_acceptance;
}

int cmd_verify(const RunConfig& cfg) {
  const std::string& s = cfg.suite;
  if (s != "all" && s != "dispersion" && s != "krein" && s != "converge")
    throw Failure{exit_input, "unknown suite '" + s + "'"};
  bool ok = true;
  int code = exit_ok;
  if (s == "all" || s == "dispersion") ok = suite_dispersion(cfg, std::cerr) && ok;
  if (s == "all" || s == "krein") ok = suite_krein(cfg, std::cerr) && ok;
  if (s == "all" || s == "converge") code = suite_converge(cfg, std::cerr);
  if (code != exit_ok) return code;
  return ok ? exit_ok : exit_acceptance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral analysis of the magnetic Laplacian on the periodic tubular graph G1"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_A = [&](CLI::App* sub) {
    sub->add_option_function<double>("--A", [&](double v) { cfg.A = v; cfg.A_set = true; },
                                     "magnetic potential (radians)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", cfg.output, "output path (default: stdout)");
  };
  auto add_kmax = [&](CLI::App* sub) {
    sub->add_option_function<int>("--kmax", [&](int v) { cfg.kmax = v; cfg.kmax_set = true; },
                                  "number of band groups / eigenvalues")
        ->check(CLI::Range(1, 10000));
  };

  auto* bands = app.add_subcommand("bands", "band table for a potential");
  add_A(bands);
  add_kmax(bands);
  add_format(bands);

  auto* critical = app.add_subcommand("critical", "critical potentials, mu-scan and degeneracy order");
  add_A(critical);
  critical->add_option("--points", cfg.points, "A-grid size of the mu-scan")->check(CLI::Range(1, 100000));
  add_format(critical);

  auto* homog = app.add_subcommand("homog", "homogenized model at A_plus + delta");
  homog->add_option("--delta", cfg.delta, "potential offset delta");
  homog->add_option("--eps", cfg.eps, "period eps (regime check)")->check(CLI::PositiveNumber);
  add_format(homog);

  auto* verify = app.add_subcommand("verify", "finite-difference verification suites");
  verify->add_option("--suite", cfg.suite, "dispersion, krein, converge or all");
  add_A(verify);
  add_kmax(verify);
  verify->add_option("--t", cfg.t, "quasimomentum for dispersion and krein");
  verify->add_option("--n", cfg.n_list, "interior points per edge (comma list)")->delimiter(',')->check(CLI::Range(8, 100000));
  verify->add_option("--delta", cfg.delta, "potential offset delta");
  verify->add_option_function<double>("--delta-eps2", [&](double v) { cfg.delta_eps2 = v; cfg.delta_eps2_set = true; },
                                      "use delta = value * eps^2 at every eps");
  verify->add_option("--eps", cfg.eps_list, "eps grid (comma list)")->delimiter(',')->check(CLI::PositiveNumber);
  verify->add_option("--z", cfg.z_list, "spectral parameters, e.g. 1i,0.5+1i")->delimiter(',');
  verify->add_option("--tau-points", cfg.tau_points, "quasimomentum grid size")->check(CLI::Range(1, 1000000));
  verify->add_option("--jobs", cfg.jobs, "worker threads (0: available parallelism)")->check(CLI::NonNegativeNumber);
  verify->add_flag("--no-refine", cfg.no_refine, "skip the 2n+1 refinement check");
  add_format(verify);

  auto* dispersion = app.add_subcommand("dispersion", "raw dispersion samples");
  add_A(dispersion);
  add_kmax(dispersion);
  dispersion->add_option("--grid", cfg.grid, "t-grid size")->check(CLI::Range(2, 10000000));
  add_format(dispersion);

  auto* fig2 = app.add_subcommand("fig2", "range profile t, f_plus, f_minus");
  add_A(fig2);
  fig2->add_option("--grid", cfg.grid, "t-grid size")->check(CLI::Range(2, 10000000));
  add_format(fig2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (*bands) return cmd_bands(cfg);
    if (*critical) return cmd_critical(cfg);
    if (*homog) return cmd_homog(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*dispersion) return cmd_dispersion(cfg);
    if (*fig2) return cmd_fig2(cfg);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_input;
}
