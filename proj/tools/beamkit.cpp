// beamkit command-line front end.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
// 3 numerical non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "beamkit/beamcore.hpp"
#include "beamkit/identities.hpp"
#include "beamkit/integralrep.hpp"
#include "beamkit/parallel.hpp"
#include "beamkit/pwseries.hpp"
#include "beamkit/suites.hpp"
#include "beamkit/wavepacket.hpp"

namespace {

using beamkit::complex;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNoConvergence = 3 };

/// Locale-independent, round-trippable rendering (17 significant digits).
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct BeamFlags {
  double omega = 1.0;
  double cos_theta = 1.0;
  std::string dispersion = "vacuum";
  double index = 1.0;
  double cauchy_a = 1.0;
  double cauchy_b = 0.0;
  std::string rep = "direct";
  std::optional<double> tol;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rep", rep, "Representation")
        ->check(CLI::IsMember({"direct", "series", "integral"}));
    cmd->add_option("--omega", omega, "Angular frequency")->required();
    cmd->add_option("--cos-theta", cos_theta, "Cosine of the cone angle")->required();
    cmd->add_option("--dispersion", dispersion, "Dispersion model")
        ->check(CLI::IsMember({"vacuum", "constant", "cauchy"}));
    cmd->add_option("--index", index, "Index for --dispersion constant");
    cmd->add_option("--cauchy-a", cauchy_a, "A in n(w) = A + B w^2");
    cmd->add_option("--cauchy-b", cauchy_b, "B in n(w) = A + B w^2");
    cmd->add_option("--tol", tol, "Target accuracy of the approximate routes");
  }

  beamkit::DispersionModel model() const {
    if (dispersion == "constant") return beamkit::DispersionModel::constant(index);
    if (dispersion == "cauchy") return beamkit::DispersionModel::cauchy(cauchy_a, cauchy_b);
    return beamkit::DispersionModel::vacuum();
  }
};

struct PointResult {
  complex value{NAN, NAN};
  bool converged = true;
  std::string extra;  // route diagnostics for the text record
};

PointResult evaluate(const BeamFlags& f, const beamkit::BeamParams& beam,
                     const beamkit::DispersionModel& model, const beamkit::FieldPoint& p) {
  PointResult out;
  if (f.rep == "direct") {
    out.value = beamkit::eval_direct_dispersive(beam, model, p);
  } else if (f.rep == "series") {
    const auto r = beamkit::pwseries::eval_series_dispersive(beam, model, p, f.tol.value_or(1e-14));
    out.value = r.value;
    out.converged = r.converged;
    out.extra = " n_terms=" + std::to_string(r.n_terms) + " tail_estimate=" + num(r.tail_estimate);
  } else {
    const auto r =
        beamkit::integralrep::eval_integral_rep_dispersive(beam, model, p, f.tol.value_or(1e-8));
    out.value = r.value;
    out.converged = r.converged;
    out.extra = " n_evals=" + std::to_string(r.n_evals) + " error_estimate=" + num(r.error_estimate);
  }
  return out;
}

// ---- eval ------------------------------------------------------------------

int cmd_eval(const BeamFlags& f, const beamkit::FieldPoint& p) {
  const beamkit::BeamParams beam(f.omega, f.cos_theta);
  const auto model = f.model();
  const PointResult r = evaluate(f, beam, model, p);
  std::cout << "rep=" << f.rep << " dispersion=" << model.name() << " re=" << num(r.value.real())
            << " im=" << num(r.value.imag()) << " abs=" << num(std::abs(r.value)) << r.extra;
  if (f.rep != "direct") std::cout << " converged=" << (r.converged ? 1 : 0);
  std::cout << '\n';
  if (!r.converged) {
    std::cerr << "beamkit: evaluation did not converge\n";
    return kNoConvergence;
  }
  return kOk;
}

// ---- map -------------------------------------------------------------------

struct GridFlags {
  double z_min = 0.0, z_max = 0.0;
  unsigned z_steps = 1;
  double rho_min = 0.0, rho_max = 0.0;
  unsigned rho_steps = 1;
  double t = 0.0;

  void validate() const {
    if (z_steps < 1 || rho_steps < 1) throw beamkit::DomainError("grid steps must be >= 1");
    if (z_min > z_max || rho_min > rho_max) throw beamkit::DomainError("grid requires min <= max");
    if (rho_min < 0.0) throw beamkit::DomainError("grid requires rho_min >= 0");
  }

  static double node(double lo, double hi, unsigned steps, unsigned i) {
    return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
  }
};

struct MapRow {
  beamkit::FieldPoint p;
  complex value{NAN, NAN};
  bool ok = false;
};

int cmd_map(const BeamFlags& f, const GridFlags& g, const std::string& out_path,
            const std::string& format) {
  g.validate();
  const beamkit::BeamParams beam(f.omega, f.cos_theta);
  const auto model = f.model();
  model.evaluate(f.omega);  // reject a bad model before any point is computed

  std::vector<MapRow> rows;
  rows.reserve(static_cast<std::size_t>(g.z_steps) * g.rho_steps);
  for (unsigned i = 0; i < g.z_steps; ++i) {
    for (unsigned j = 0; j < g.rho_steps; ++j) {
      MapRow row;
      row.p = {GridFlags::node(g.z_min, g.z_max, g.z_steps, i),
               GridFlags::node(g.rho_min, g.rho_max, g.rho_steps, j), g.t};
      rows.push_back(row);
    }
  }
  beamkit::parallel_for(
      rows.size(),
      [&](std::size_t k) {
        try {
          const PointResult r = evaluate(f, beam, model, rows[k].p);
          rows[k].ok = r.converged;
          if (r.converged) rows[k].value = r.value;
        } catch (const std::exception&) {
          rows[k].ok = false;
        }
      },
      beamkit::worker_count());

  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  std::size_t failed = 0;
  if (format == "csv") {
    os << "z,rho,t,re,im,abs\n";
    for (const auto& r : rows) {
      failed += r.ok ? 0 : 1;
      const double mag = r.ok ? std::abs(r.value) : NAN;
      os << num(r.p.z) << ',' << num(r.p.rho) << ',' << num(r.p.t) << ',' << num(r.value.real())
         << ',' << num(r.value.imag()) << ',' << num(mag) << '\n';
    }
  } else {
    json arr = json::array();
    for (const auto& r : rows) {
      failed += r.ok ? 0 : 1;
      const double mag = r.ok ? std::abs(r.value) : NAN;
      arr.push_back({{"z", r.p.z},
                     {"rho", r.p.rho},
                     {"t", r.p.t},
                     {"re", r.value.real()},
                     {"im", r.value.imag()},
                     {"abs", mag}});
    }
    os << arr.dump(2) << '\n';
  }
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + out_path);
  std::cout << "points=" << rows.size() << " failed=" << failed << " out=" << out_path << '\n';
  return failed == 0 ? kOk : kNoConvergence;
}

// ---- verify ----------------------------------------------------------------

json report_json(const beamkit::identities::IdentityReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  return {{"identity_id", r.identity_id}, {"params", params},    {"lhs_re", r.lhs.real()},
          {"lhs_im", r.lhs.imag()},       {"rhs_re", r.rhs.real()}, {"rhs_im", r.rhs.imag()},
          {"abs_err", r.abs_err},         {"rel_err", r.rel_err}, {"tol", r.tol},
          {"pass", r.pass}};
}

int cmd_verify(const std::string& suite, const std::string& out_path,
               std::optional<double> tol_override) {
  auto reports = beamkit::suites::run_suite(suite, beamkit::worker_count());
  if (tol_override) {
    for (auto& r : reports) beamkit::identities::judge(r, *tol_override);
  }
  json arr = json::array();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    arr.push_back(report_json(r));
    if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.identity_id << " abs_err=" << num(r.abs_err)
                << " rel_err=" << num(r.rel_err) << " tol=" << num(r.tol) << '\n';
    }
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << arr.dump(2) << '\n';
  } else {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + out_path);
    os << arr.dump(2) << '\n';
    if (!os) throw std::runtime_error("write failed: " + out_path);
    std::cout << "suite=" << suite << " reports=" << reports.size() << " failed=" << failed
              << " out=" << out_path << '\n';
  }
  return failed == 0 ? kOk : kVerifyFailed;
}

// ---- wavepacket tools ------------------------------------------------------

int cmd_legendre_sum(const beamkit::wavepacket::ConeAngles& a, unsigned n_max,
                     const std::string& mode) {
  namespace wp = beamkit::wavepacket;
  const auto r = wp::triple_legendre_sum(a, n_max, wp::parse_sum_mode(mode));
  const double ref = wp::triple_legendre_closed_form(a);
  std::cout << "value=" << num(r.value.real()) << " mode=" << mode << " n_max=" << n_max
            << " reference=" << num(ref) << " support=" << (wp::support_predicate(a) ? 1 : 0)
            << '\n';
  return kOk;
}

int cmd_xwave(double cos_theta, const beamkit::FieldPoint& p, unsigned n_max,
              const std::string& mode) {
  namespace wp = beamkit::wavepacket;
  const double closed = wp::xwave_closed_form(cos_theta, p);
  std::cout << "value=" << num(closed);
  const auto v = beamkit::to_spherical(p);
  if (!v.degenerate && std::abs(p.t) <= v.r) {
    const auto s = wp::wavepacket_series(cos_theta, p, n_max, wp::parse_sum_mode(mode));
    std::cout << " series=" << num(s.value.real()) << " mode=" << mode << " n_max=" << n_max;
  } else {
    std::cout << " series=undefined";
  }
  std::cout << " reference=" << num(closed) << '\n';
  return kOk;
}

// ---- selfcheck -------------------------------------------------------------

int cmd_selfcheck() {
  int failures = 0;
  auto line = [&](const std::string& name, bool ok, double err) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " err=" << num(err) << '\n';
    failures += ok ? 0 : 1;
  };
  const beamkit::BeamParams beam(2.0, 0.6);
  double ws = 0.0, wi = 0.0;
  for (double z : {-1.0, 0.0, 2.0}) {
    for (double rho : {0.0, 0.7, 1.5}) {
      const beamkit::FieldPoint p{z, rho, 0.4};
      const complex d = beamkit::eval_direct(beam, p);
      ws = std::max(ws, std::abs(beamkit::pwseries::eval_series(beam, p).value - d));
      wi = std::max(wi, std::abs(beamkit::integralrep::eval_integral_rep(beam, p).value - d));
    }
  }
  line("series_vs_direct", ws <= 1e-10, ws);
  line("integral_vs_direct", wi <= 1e-6, wi);
  for (const char* suite : {"orthogonality", "planewave", "hochstadt"}) {
    double worst = 0.0;
    bool ok = true;
    for (const auto& r : beamkit::suites::run_suite(suite, 1)) {
      worst = std::max(worst, r.abs_err);
      ok = ok && r.pass;
    }
    line(suite, ok, worst);
  }
  return failures == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beamkit: Bessel beams by direct, partial-wave and integral evaluation"};
  app.require_subcommand(1);

  BeamFlags beam;
  beamkit::FieldPoint point;

  auto* eval = app.add_subcommand("eval", "Evaluate the beam at one point");
  beam.attach(eval);
  eval->add_option("--z", point.z);
  eval->add_option("--rho", point.rho)->check(CLI::NonNegativeNumber);
  eval->add_option("--t", point.t);

  GridFlags grid;
  std::string out_path;
  std::string format = "csv";
  auto* map = app.add_subcommand("map", "Write a (z, rho) field map at one time slice");
  beam.attach(map);
  map->add_option("--z-min", grid.z_min);
  map->add_option("--z-max", grid.z_max);
  map->add_option("--z-steps", grid.z_steps);
  map->add_option("--rho-min", grid.rho_min);
  map->add_option("--rho-max", grid.rho_max);
  map->add_option("--rho-steps", grid.rho_steps);
  map->add_option("--t", grid.t);
  map->add_option("--out", out_path, "Output file")->required();
  map->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  std::string suite = "all";
  std::string verify_out;
  std::string verify_format = "json";
  auto* verify = app.add_subcommand("verify", "Run an identity verification suite");
  verify->add_option("--suite", suite)->check(CLI::IsMember(
      std::vector<std::string>(beamkit::suites::kSuiteNames.begin(), beamkit::suites::kSuiteNames.end())));
  verify->add_option("--out", verify_out, "Output file ('-' or absent: stdout)");
  verify->add_option("--format", verify_format)->check(CLI::IsMember({"json"}));
  std::optional<double> verify_tol;
  verify->add_option("--tol", verify_tol, "Re-judge every report at this tolerance")
      ->check(CLI::NonNegativeNumber);

  beamkit::wavepacket::ConeAngles angles;
  unsigned n_max = 2000;
  std::string mode = "cesaro";
  auto* lsum = app.add_subcommand("legendre-sum", "Triple Legendre product sum");
  lsum->add_option("--cos-theta", angles.cos_theta)->required();
  lsum->add_option("--cos-eta", angles.cos_eta)->required();
  lsum->add_option("--cos-gamma", angles.cos_gamma)->required();
  lsum->add_option("--n-max", n_max);
  lsum->add_option("--mode", mode)->check(CLI::IsMember({"raw", "cesaro", "double_average"}));

  double xw_cos_theta = 0.0;
  beamkit::FieldPoint xw_point;
  auto* xwave = app.add_subcommand("xwave", "Constant-spectrum wavepacket (X-wave)");
  xwave->add_option("--cos-theta", xw_cos_theta)->required();
  xwave->add_option("--z", xw_point.z);
  xwave->add_option("--rho", xw_point.rho)->check(CLI::NonNegativeNumber);
  xwave->add_option("--t", xw_point.t);
  xwave->add_option("--n-max", n_max);
  xwave->add_option("--mode", mode)->check(CLI::IsMember({"raw", "cesaro", "double_average"}));

  auto* selfcheck = app.add_subcommand("selfcheck", "Quick consistency check of all routes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) return cmd_eval(beam, point);
    if (*map) return cmd_map(beam, grid, out_path, format);
    if (*verify) return cmd_verify(suite, verify_out, verify_tol);
    if (*lsum) return cmd_legendre_sum(angles, n_max, mode);
    if (*xwave) return cmd_xwave(xw_cos_theta, xw_point, n_max, mode);
    if (*selfcheck) return cmd_selfcheck();
  } catch (const beamkit::DomainError& e) {
    std::cerr << "beamkit: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "beamkit: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
