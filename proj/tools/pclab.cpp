// pclab: command-line front end for the pseudoholomorphic-curve lab.
//
// Subcommands: lincx, cg, disk, gromov, inv, hyp, bubble, suite.
// Exit codes: 0 pass, 1 fail, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pclab/pclab.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace pclab;

namespace {

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  const auto rows = j.size();
  if (rows == 0) throw UsageError("empty matrix");
  const auto cols = j.at(0).size();
  Mat m(static_cast<int>(rows), static_cast<int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(static_cast<int>(i), static_cast<int>(k)) = j.at(i).at(k).get<double>();
  return m;
}

std::vector<double> parse_reals(const std::string& s, char sep = ',') {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// ---- lincx ---------------------------------------------------------------

int run_lincx(const std::string& in_path) {
  json doc;
  if (in_path.empty()) {
    std::cin >> doc;
  } else {
    std::ifstream is(in_path);
    if (!is) throw UsageError("cannot open " + in_path);
    is >> doc;
  }
  auto omega = lincx::BilinearForm::symplectic(mat_from_json(doc.at("omega")));
  auto g = lincx::BilinearForm::metric(mat_from_json(doc.at("g")));
  auto j = lincx::calibrated_from_metric(omega, g);
  json out;
  out["J"] = mat_to_json(j.mat);
  out["taming_margin"] = lincx::taming_margin(omega, j);
  out["residual_J2_plus_I"] = j.square_residual();
  out["residual_omega_invariance"] =
      (j.mat.transpose() * omega.mat * j.mat - omega.mat).cwiseAbs().maxCoeff();
  std::cout << out.dump(2) << "\n";
  return 0;
}

// ---- cg ------------------------------------------------------------------

int run_cg(const std::string& op, int n, const std::string& in_path,
           const std::string& out_path, int field_id, double p, double tau,
           const std::string& csv_path) {
  disk::DiskField f = [&] {
    if (!in_path.empty()) return disk::read_pclf(in_path);
    disk::DiskGrid g(n);
    return accept::detail::smooth_test_field(g, field_id);
  }();
  json rep;
  rep["op"] = op;
  rep["n"] = f.grid.n;
  if (op == "dbar") {
    auto d = disk::dbar(f);
    if (!out_path.empty()) disk::write_pclf(out_path, d);
    rep["L2_in"] = disk::lp(f, 2.0).value;
    rep["L2_out"] = disk::lp(d, 2.0).value;
  } else if (op == "T") {
    auto tf = disk::cauchy_green(f);
    if (!out_path.empty()) disk::write_pclf(out_path, tf);
    rep["L2_in"] = disk::lp(f, 2.0).value;
    rep["L2_out"] = disk::lp(tf, 2.0).value;
    rep["rel_residual_dbar_T"] =
        disk::lp(disk::dbar(tf) - f, 2.0, 0.9).value / disk::lp(f, 2.0, 0.9).value;
  } else if (op == "cz") {
    rep["p"] = p;
    rep["C_p"] = disk::cz_ratio(f, p);
  } else if (op == "dilation") {
    auto d = disk::dilation_norm_check(f, tau, p);
    rep["tau"] = tau;
    rep["p"] = p;
    rep["lhs"] = d.lhs;
    rep["rhs"] = d.rhs;
  } else {
    throw UsageError("unknown --op " + op);
  }
  if (!csv_path.empty()) {
    std::ofstream cs(csv_path);
    cs << "key,value\n";
    for (auto& [k, v] : rep.items())
      if (v.is_number()) cs << k << "," << v.dump() << "\n";
  }
  std::cout << rep.dump(2) << "\n";
  return 0;
}

// ---- disk ----------------------------------------------------------------

jdisk::StructureField parse_structure(const std::string& spec, int dim) {
  auto parts = split(spec, ':');
  if (parts.empty()) throw UsageError("empty structure spec");
  if (parts[0] == "std") return jdisk::standard_field(dim);
  if (parts[0] == "cayley") {
    double eps = parts.size() > 1 ? std::stod(parts[1]) : 0.05;
    return jdisk::cayley_radial_field(dim, eps);
  }
  throw UsageError("unknown structure builtin: " + parts[0] +
                   " (use std or cayley:<c1 norm>)");
}

int run_disk(const std::string& jspec, const std::string& wspec, int n, double tol,
             const std::string& out_dir) {
  auto wlist = split(wspec, ';');
  const int m = static_cast<int>(wlist.size());
  if (m == 0) throw UsageError("--w needs at least one component");
  Vec v(2 * m), x0 = Vec::Zero(2 * m);
  for (int c = 0; c < m; ++c) {
    auto re_im = parse_reals(wlist[c]);
    if (re_im.size() != 2) throw UsageError("--w entries are re,im pairs");
    v[2 * c] = re_im[0];
    v[2 * c + 1] = re_im[1];
  }
  auto jf = parse_structure(jspec, 2 * m);
  disk::DiskGrid g(n);
  auto sol = jdisk::solve_disk(jf, x0, v, g, tol, 200);
  auto ea = jdisk::energy_area(jf, jdisk::ambient_map(sol), sol.t);
  fs::create_directories(out_dir);
  std::string field_path = (fs::path(out_dir) / "disk_solution.pclf").string();
  disk::write_pclf(field_path, sol.u);
  json rep;
  rep["iterations"] = sol.iterations;
  rep["residual"] = sol.residual;
  rep["stencil_residual"] = sol.stencil_residual;
  rep["energy"] = ea.energy;
  rep["area"] = ea.area;
  rep["t"] = sol.t;
  rep["field"] = field_path;
  std::cout << rep.dump(2) << "\n";
  return 0;
}

// ---- gromov ----------------------------------------------------------------

int run_gromov(const std::string& check, std::uint64_t seed) {
  Rng rng(seed);
  auto jf = jdisk::cayley_radial_field(4, 0.05);
  const double fd = 1e-4;
  double res[2];
  for (int pass = 0; pass < 2; ++pass) {
    const int n = pass == 0 ? 64 : 128;
    disk::DiskGrid g(n);
    Vec x0 = Vec::Zero(4), v = Vec::Zero(4);
    v[0] = 0.1;
    auto sol = jdisk::solve_disk(jf, x0, v, g, 1e-9, 200);
    jdisk::StructureField jt{4, [&jf, t = sol.t](const Vec& p) { return jf.eval(t * p); },
                             jf.lipschitz_bound * sol.t, jf.domain_radius};
    const auto& u = sol.u;
    auto vsec = disk::DiskField::sample(g, 2, [](cplx z, int c) {
      return c == 0 ? cplx(0.05 * z.real(), 0.03 * std::norm(z))
                    : cplx(0.02, 0.04 * z.imag());
    });
    gromovop::SectionField sv{vsec};
    if (check == "rdu") {
      gromovop::SectionField sdu{disk::derivative(u, disk::Axis::X)};
      res[pass] = gromovop::sup_cell_norm(gromovop::antilinear_part(jt, u, sdu, fd));
    } else if (check == "antilinear") {
      auto r = gromovop::gromov_d(jt, u, sv, fd);
      // antilinearity of the output form: form(J_D xi) = -J form(xi)
      auto jdx = gromovop::apply_structure_along(jt, u, r.on_dx);
      res[pass] = gromovop::sup_cell_norm(r.on_dy + jdx);
    } else if (check == "leibniz") {
      auto fsc = disk::DiskField::sample(g, 1, [](cplx z, int) { return z; });
      res[pass] = gromovop::leibniz_check(jt, u, sv, fsc, fd);
    } else if (check == "connection") {
      auto gamma = gromovop::random_christoffel(4, 0.3, rng);
      auto d0 = gromovop::gromov_d(jt, u, sv, fd);
      auto d1 = gromovop::gromov_d_perturbed(jt, u, sv, fd, gamma);
      res[pass] = gromovop::sup_cell_norm({d1.on_dx - d0.on_dx, d1.on_dy - d0.on_dy});
    } else {
      throw UsageError("unknown --check " + check);
    }
  }
  double order = std::log2(res[0] / res[1]);
  json rep;
  rep["check"] = check;
  rep["residual_n64"] = res[0];
  rep["residual_n128"] = res[1];
  rep["order"] = order;
  rep["pass"] = order >= 1.0;
  std::cout << rep.dump(2) << "\n";
  return rep["pass"].get<bool>() ? 0 : 1;
}

// ---- inv -------------------------------------------------------------------

int run_inv(const std::string& ambient, long long degree, long long degree2,
            long long genus, long long nodes, const std::string& cusps) {
  namespace inv = pclab::invariants;
  auto amb = inv::ambient_from_string(ambient);
  long long kappa = 0;
  json cusp_list = json::array();
  for (const auto& c : split(cusps, ';')) {
    auto pq = parse_reals(c);
    if (pq.size() != 2) throw UsageError("cusps are given as p,q pairs");
    long long p = static_cast<long long>(pq[0]), q = static_cast<long long>(pq[1]);
    inv::CuspData cd{p - 1, (p - 1) * (q - 1) - 1};
    long long k = inv::conductor(cd);
    kappa += k;
    json jc;
    jc["p"] = p;
    jc["q"] = q;
    jc["b(gamma)"] = cd.bennequin;
    jc["kappa"] = k;
    cusp_list.push_back(jc);
  }
  auto pairing = inv::ambient_pairing(amb, degree, degree2);
  inv::SurfaceData s{{genus}, pairing.M2, pairing.c1M, nodes, kappa};

  json rep;
  rep["ambient"] = ambient;
  rep["d"] = degree;
  if (amb == inv::Ambient::CP1xCP1) rep["d2"] = degree2;
  rep["g"] = genus;
  rep["[M]^2"] = pairing.M2;
  rep["c_1(X)[M]"] = pairing.c1M;
  rep["delta"] = nodes;
  rep["kappa"] = kappa;
  if (!cusp_list.empty()) rep["cusps"] = cusp_list;
  try {
    inv::SurfaceData formula_data{{0}, pairing.M2, pairing.c1M, nodes, kappa};
    rep["sum g_j"] = inv::genus_sum(formula_data);
  } catch (const Error& e) {
    rep["sum g_j"] = std::string("undefined: ") + e.what();
  }
  long long chi = 2 - 2 * genus;
  rep["chi"] = chi;
  auto lai = inv::lai_indices(chi, pairing.M2, pairing.c1M);
  rep["I_+"] = lai.i_plus;
  rep["I_-"] = lai.i_minus;
  rep["stein_eligible"] = lai.stein_eligible;
  if (pairing.M2 >= 0) {
    auto sw = inv::sw_adjunction_check(s);
    rep["SW_adjunction_holds"] = sw.adjunction_holds;
    rep["Kronheimer_bound_holds"] = sw.kronheimer_holds;
  }
  auto env = inv::envelope_criterion(amb, degree, degree2, genus);
  rep["envelope"] = inv::to_string(env.verdict);
  rep["genus_threshold"] = env.threshold;
  if (env.symplectic_degree_bound)
    rep["symplectic_degree_le_8"] = *env.symplectic_degree_bound;
  rep["ind_R D"] = gromovop::moduli_index(pairing.c1M, 2, genus);
  std::cout << rep.dump(2) << "\n";
  return 0;
}

// ---- hyp -------------------------------------------------------------------

int run_hyp(const std::string& collar, const std::string& strip,
            const std::string& decay, const std::string& cylinder,
            const std::string& out_dir, std::uint64_t seed) {
  json rep;
  auto params = [](const std::string& s) {
    std::map<std::string, double> kv;
    for (const auto& item : split(s, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("expected key=value: " + item);
      kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return kv;
  };
  if (!collar.empty()) {
    auto kv = params(collar);
    double ell = kv.count("ell") ? kv["ell"] : 1.0;
    double a = kv.count("a") ? kv["a"] : 2 * kPi;
    auto b = hypmod::collar_bounds(ell, a);
    rep["ell"] = ell;
    rep["a*"] = a;
    rep["log R upper"] = b.upper;
    rep["log R lower"] = b.lower;
    rep["rho*"] = b.rho_star;
    rep["log R interior"] = hypmod::interior_collar_bound(ell);
    rep["conformal factor at rho=0"] = hypmod::collar_metric(ell, 0.0);
  } else if (!strip.empty()) {
    Mat w0, w1;
    for (const auto& part : split(strip, ';')) {
      auto eq = part.find('=');
      if (eq == std::string::npos) throw UsageError("strip spec: W0=...;W1=...");
      std::string key = part.substr(0, eq);
      auto cols = split(part.substr(eq + 1), '|');
      const int ncols = static_cast<int>(cols.size());
      auto first = parse_reals(cols[0]);
      Mat b(static_cast<int>(first.size()), ncols);
      for (int c = 0; c < ncols; ++c) {
        auto vals = parse_reals(cols[c]);
        if (static_cast<int>(vals.size()) != b.rows())
          throw UsageError("ragged basis column");
        for (int r = 0; r < b.rows(); ++r) b(r, c) = vals[r];
      }
      if (key == "W0")
        w0 = b;
      else if (key == "W1")
        w1 = b;
      else
        throw UsageError("strip spec keys are W0 and W1");
    }
    auto res = hypmod::strip_eigenvalue({w0, w1});
    rep["lambda_1"] = res.lambda1;
    rep["gamma_W"] = res.gamma_w;
    if (res.p_star) rep["p*"] = *res.p_star;
    rep["dim(W0 cap W1)"] = res.intersection_dim;
  } else if (!decay.empty()) {
    auto kv = params(decay);
    double gamma = kv.count("gamma") ? kv["gamma"] : hypmod::gamma_one();
    auto dc = hypmod::decay_constants(gamma);
    rep["gamma"] = dc.gamma;
    rep["lambda"] = dc.lambda;
    rep["quadratic residual"] =
        std::abs(dc.lambda - 0.5 * dc.gamma * (dc.lambda * dc.lambda + 1.0));
  } else if (!cylinder.empty()) {
    auto kv = params(cylinder);
    int l = kv.count("l") ? static_cast<int>(kv["l"]) : 10;
    Rng rng(seed);
    std::vector<std::pair<int, cplx>> modes;
    for (int k = 0; k < 3; ++k) {
      int mode = 0;
      while (mode == 0) mode = rng.uniform_int(-3, 3);
      modes.push_back({mode, std::polar(rng.uniform(0.2, 1.0) *
                                            std::exp(-std::abs(mode) * l * 0.5),
                                        rng.uniform(0.0, 2 * kPi))});
    }
    auto prof = hypmod::cylinder_decay_probe(
        [&](double t, double th) {
          cplx acc = 0;
          for (auto& [k, c] : modes) acc += c * std::exp(cplx(k * t, k * th));
          return acc;
        },
        l);
    fs::create_directories(out_dir);
    std::string csv = (fs::path(out_dir) / "cylinder_decay.csv").string();
    std::ofstream cs(csv);
    cs << "k,energy,bound\n";
    for (std::size_t k = 0; k < prof.segment_energy.size(); ++k) {
      cs << (k + 1) << "," << prof.segment_energy[k] << ",";
      if (k + 1 >= 2 && k + 1 <= prof.segment_energy.size() - 1)
        cs << prof.bound[k - 1];
      cs << "\n";
    }
    rep["l"] = l;
    rep["verdict"] = prof.verdict;
    rep["csv"] = csv;
  } else {
    throw UsageError("hyp needs one of --collar/--strip/--decay/--cylinder");
  }
  std::cout << rep.dump(2) << "\n";
  return 0;
}

// ---- bubble ----------------------------------------------------------------

int run_bubble(const std::string& demo, const std::string& nlist,
               const std::string& out_dir, std::uint64_t seed) {
  namespace bb = pclab::bubbling;
  if (demo != "halfcubic") throw UsageError("only --demo halfcubic is available");
  std::vector<int> ns;
  for (double x : parse_reals(nlist)) ns.push_back(static_cast<int>(x));
  if (ns.empty()) throw UsageError("--n needs a comma list of family parameters");
  fs::create_directories(out_dir);
  Rng rng(seed);

  // energy profiles
  std::string csv = (fs::path(out_dir) / "neck_energy.csv").string();
  {
    std::ofstream cs(csv);
    cs << "n,segment,energy\n";
    for (int n : ns) {
      auto prof = bb::neck_energy_profile(n, 8);
      for (std::size_t s = 0; s < prof.size(); ++s)
        cs << n << "," << s << "," << prof[s] << "\n";
    }
  }

  // convergence + identities
  json rep;
  rep["demo"] = demo;
  json conv = json::array();
  for (int n : ns) {
    double sup = 0;
    for (int ir = 1; ir <= 10; ++ir)
      for (int it = 0; it < 24; ++it) {
        cplx xi = std::polar(2.0 * ir / 10.0, 2 * kPi * it / 24.0);
        sup = std::max(sup, bb::fs_distance(bb::rescaled_bubble(n, xi),
                                            bb::bubble_limit(xi)));
      }
    double neck_gap = 0, curve_res = 0;
    for (int k = 0; k < 8; ++k) {
      double r = std::exp(rng.uniform(std::log(1.2 / (bb::kNeckParam * n)),
                                      std::log(bb::kChartRadius * 0.9)));
      cplx x1 = std::polar(r, rng.uniform(0.0, 2 * kPi));
      cplx t = 1.0 / (x1 * static_cast<double>(n));
      auto a = bb::neck_map(x1, t, n);
      auto b = bb::neck_composite(x1, n);
      for (int c = 0; c < 3; ++c) neck_gap = std::max(neck_gap, std::abs(a.z[c] - b.z[c]));
      curve_res = std::max(curve_res, a.curve_equation_residual(n));
    }
    json row;
    row["n"] = n;
    row["sup_dist_to_limit"] = sup;
    row["neck_identity_gap"] = neck_gap;
    row["curve_residual"] = curve_res;
    conv.push_back(row);
  }
  rep["family"] = conv;

  // concentration detector on the synthetic rescaling sequence
  disk::DiskGrid g(128);
  auto limit_density = [](cplx xi) {
    std::array<cplx, 3> z{xi, 1.0, xi * xi * xi};
    std::array<cplx, 3> zp{1.0, 0.0, 3.0 * xi * xi};
    return bb::fs_density(z, zp);
  };
  std::vector<bb::DensityField> seq;
  for (int s : ns)
    seq.push_back(disk::DiskField::sample(g, 1, [&](cplx z, int) -> cplx {
      return cplx(static_cast<double>(s) * s *
                      limit_density(static_cast<double>(s) * z),
                  0.0);
    }));
  auto conc = bb::detect_bubbles(seq, 0.1 * bb::fs_total_degree_area(3));
  json jc;
  jc["epsilon"] = conc.epsilon;
  json pts = json::array();
  for (std::size_t k = 0; k < conc.points.size(); ++k) {
    json p;
    p["location"] = {conc.points[k].location.real(), conc.points[k].location.imag()};
    p["r_n"] = conc.points[k].radius;
    p["x_n"] = {conc.points[k].center.real(), conc.points[k].center.imag()};
    p["local_energy"] = conc.points[k].local_energy;
    json hist = json::array();
    for (auto& [r, x] : conc.history[k]) hist.push_back({r, x.real(), x.imag()});
    p["history (r_n, x_n)"] = hist;
    pts.push_back(p);
  }
  jc["points"] = pts;
  std::string conc_path = (fs::path(out_dir) / "concentration.json").string();
  std::ofstream(conc_path) << jc.dump(2) << "\n";

  auto graph = bb::emit_graph(conc, 1);
  std::string dot_path = (fs::path(out_dir) / "stable_curve.dot").string();
  {
    std::ofstream ds(dot_path);
    bb::write_dot(ds, graph);
  }
  rep["energy_csv"] = csv;
  rep["concentration"] = conc_path;
  rep["graph_dot"] = dot_path;
  rep["bubbles_found"] = conc.points.size();
  std::cout << rep.dump(2) << "\n";
  return 0;
}

// ---- suite -----------------------------------------------------------------

int run_suite(const std::string& name, std::uint64_t seed, const std::string& echo) {
  if (name != "fast" && name != "full") throw UsageError("--name is fast or full");
  auto results = accept::run_all(name == "fast", seed);
  json rep;
  rep["schema"] = 1;
  rep["command"] = echo;
  rep["suite"] = name;
  rep["seed"] = seed;
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    json c;
    c["id"] = r.id;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["details"] = r.details;
    arr.push_back(c);
    all = all && r.pass;
  }
  rep["criteria"] = arr;
  rep["pass"] = all;
  std::cout << rep.dump(2) << "\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pclab: pseudoholomorphic-curve computations"};
  app.require_subcommand(1);
  std::uint64_t seed = 20260809ull;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "seed for randomized suites");
  app.add_option("--out-dir", out_dir, "artifact output directory");

  auto* c_lincx = app.add_subcommand("lincx", "calibrated structure from (omega, g)");
  std::string lincx_in;
  c_lincx->add_option("--in", lincx_in, "JSON file {\"omega\": [[..]], \"g\": [[..]]} (default stdin)");

  auto* c_cg = app.add_subcommand("cg", "Cauchy-Green operator probes");
  std::string cg_op = "T", cg_in, cg_out, cg_csv;
  int cg_n = 128, cg_field = 7;
  double cg_p = 2.0, cg_tau = 0.5;
  c_cg->add_option("--op", cg_op, "dbar|T|cz|dilation")->required();
  c_cg->add_option("--n", cg_n, "grid resolution");
  c_cg->add_option("--in", cg_in, "input PCLF field");
  c_cg->add_option("--out", cg_out, "output PCLF field");
  c_cg->add_option("--field", cg_field, "builtin test field index (no --in)");
  c_cg->add_option("--p", cg_p, "Lebesgue exponent");
  c_cg->add_option("--tau", cg_tau, "dilation parameter");
  c_cg->add_option("--csv", cg_csv, "CSV summary path");

  auto* c_disk = app.add_subcommand("disk", "J-holomorphic disk solver");
  std::string disk_j = "cayley:0.05", disk_w = "0.1,0;0,0";
  int disk_n = 128;
  double disk_tol = 1e-8;
  c_disk->add_option("--J", disk_j, "structure builtin, e.g. std or cayley:0.05");
  c_disk->add_option("--w", disk_w, "derivative target, re,im;re,im;...");
  c_disk->add_option("--n", disk_n, "grid resolution");
  c_disk->add_option("--tol", disk_tol, "solver tolerance");

  auto* c_gromov = app.add_subcommand("gromov", "Gromov operator identity checks");
  std::string gr_check;
  c_gromov->add_option("--check", gr_check, "antilinear|leibniz|rdu|connection")->required();

  auto* c_inv = app.add_subcommand("inv", "topological invariant arithmetic");
  std::string inv_amb = "cp2", inv_cusps;
  long long inv_d = 1, inv_d2 = 0, inv_g = 0, inv_nodes = 0;
  c_inv->add_option("--ambient", inv_amb, "cp2|cp1xcp1|cp1xy|blowup");
  c_inv->add_option("--degree", inv_d, "degree (or first bidegree)");
  c_inv->add_option("--degree2", inv_d2, "second bidegree (cp1xcp1)");
  c_inv->add_option("--genus", inv_g, "surface genus");
  c_inv->add_option("--nodes", inv_nodes, "node count delta");
  c_inv->add_option("--cusps", inv_cusps, "cusp list p,q;p,q;...");

  auto* c_hyp = app.add_subcommand("hyp", "hyperbolic collar / strip / decay constants");
  std::string hyp_collar, hyp_strip, hyp_decay, hyp_cyl;
  c_hyp->add_option("--collar", hyp_collar, "ell=..[,a=..]");
  c_hyp->add_option("--strip", hyp_strip, "W0=cols;W1=cols (cols: re,im[,..] | ...)");
  c_hyp->add_option("--decay", hyp_decay, "gamma=..");
  c_hyp->add_option("--cylinder", hyp_cyl, "l=..");

  auto* c_bubble = app.add_subcommand("bubble", "Gromov degeneration demo");
  std::string bb_demo = "halfcubic", bb_ns = "4,8,16,32";
  c_bubble->add_option("--demo", bb_demo, "halfcubic");
  c_bubble->add_option("--n", bb_ns, "family parameters, comma list");

  auto* c_suite = app.add_subcommand("suite", "acceptance battery");
  std::string suite_name = "fast";
  c_suite->add_option("--name", suite_name, "fast|full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string echo;
  for (int i = 0; i < argc; ++i) echo += std::string(i ? " " : "") + argv[i];

  try {
    if (c_lincx->parsed()) return run_lincx(lincx_in);
    if (c_cg->parsed())
      return run_cg(cg_op, cg_n, cg_in, cg_out, cg_field, cg_p, cg_tau, cg_csv);
    if (c_disk->parsed()) return run_disk(disk_j, disk_w, disk_n, disk_tol, out_dir);
    if (c_gromov->parsed()) return run_gromov(gr_check, seed);
    if (c_inv->parsed())
      return run_inv(inv_amb, inv_d, inv_d2, inv_g, inv_nodes, inv_cusps);
    if (c_hyp->parsed())
      return run_hyp(hyp_collar, hyp_strip, hyp_decay, hyp_cyl, out_dir, seed);
    if (c_bubble->parsed()) return run_bubble(bb_demo, bb_ns, out_dir, seed);
    if (c_suite->parsed()) return run_suite(suite_name, seed, echo);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
