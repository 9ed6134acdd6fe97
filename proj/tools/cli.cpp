// Command-line surface: compute, verify, export, cache.
//
// Exit codes: 0 ok, 1 mismatch / verification failure / missing data,
// 2 usage, 3 internal.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "symqm/closed_form.hpp"
#include "symqm/eigenstates.hpp"
#include "symqm/fock_basis.hpp"
#include "symqm/hamiltonian.hpp"
#include "symqm/reference_forms.hpp"
#include "symqm/trace_algebra.hpp"

namespace fs = std::filesystem;
using namespace symqm;

namespace {

// 17 significant digits: enough to round-trip a double, stable across runs.
std::string fmt_d(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

std::string json_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

struct CmdResult {
  std::string payload;
  int code = 0;
};

void deliver(const std::string& payload, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(outPath, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + outPath);
  f << payload;
}

// Env var SYMQM_CACHE overrides the flag.
std::string resolve_cache_dir(const std::string& flag) {
  if (const char* env = std::getenv("SYMQM_CACHE")) return env;
  return flag;
}

// Returns the cached payload for `key` or computes and stores it. Cached
// bytes are served verbatim, so warm and cold runs are byte-identical.
std::string cached(const std::string& cacheDir, const std::string& key,
                   const std::function<std::string()>& make) {
  if (cacheDir.empty()) return make();
  fs::create_directories(cacheDir);
  fs::path file = fs::path(cacheDir) / key;
  if (fs::exists(file)) {
    std::ifstream f(file, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
  }
  std::string payload = make();
  std::ofstream f(file, std::ios::binary);
  f << payload;
  return payload;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      out(static_cast<long>(i), static_cast<long>(j)) = to_double(m[i][j]);
  return out;
}

BrickTable load_brick_table(const std::string& path, int n) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open brick table: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("brick table " + path + ": " + e.what());
  }
  if (!j.contains("N") || !j.contains("nF") || !j.contains("bricks"))
    throw std::invalid_argument(
        "brick table needs fields N, nF, bricks [{alpha, nB}]");
  BrickTable t;
  t.n = j.at("N").get<int>();
  t.nF = j.at("nF").get<int>();
  for (const auto& b : j.at("bricks"))
    t.bricks.push_back({b.at("alpha").get<int>(), b.at("nB").get<int>()});
  if (t.n != n)
    throw std::invalid_argument("brick table is for N=" + std::to_string(t.n) +
                                ", not N=" + std::to_string(n));
  return t;
}

// --sector is "bosonic" or a fermion number.
std::optional<int> parse_sector(const std::string& s) {
  if (s == "bosonic") return std::nullopt;
  try {
    std::size_t pos = 0;
    int nf = std::stoi(s, &pos);
    if (pos == s.size() && nf >= 0) return nf;
  } catch (...) {
  }
  throw std::invalid_argument("--sector must be 'bosonic' or a fermion number");
}

// ---------------------------------------------------------------- basis --

CmdResult cmd_basis(int n, int ncut, const std::string& format,
                    const std::string& cacheDir) {
  std::string key = "basis-n" + std::to_string(n) + "-c" +
                    std::to_string(ncut) + "-" + format + "-v1";
  std::string payload = cached(cacheDir, key, [&] {
    CutBasis b = enumerate_basis(n, ncut);
    std::ostringstream o;
    if (format == "json") {
      o << "{\"n\":" << n << ",\"ncut\":" << ncut
        << ",\"dimension\":" << b.states.size() << ",\"states\":[";
      for (std::size_t i = 0; i < b.states.size(); ++i) {
        if (i) o << ",";
        o << json_ints(b.states[i].p);
      }
      o << "]}\n";
    } else {
      for (const Partition& p : b.states) {
        for (std::size_t i = 0; i < p.p.size(); ++i)
          o << (i ? "," : "") << p.p[i];
        o << "\n";
      }
    }
    return o.str();
  });
  return {payload, 0};
}

// ----------------------------------------------------------------- gram --

CmdResult cmd_gram(int n, int ncut, const std::string& format,
                   const std::string& cacheDir) {
  std::string key = "gram-n" + std::to_string(n) + "-c" + std::to_string(ncut) +
                    "-" + format + "-v1";
  std::string payload = cached(cacheDir, key, [&] {
    CutBasis b = enumerate_basis(n, ncut);
    RationalMatrix s = gram_matrix(b);
    std::ostringstream o;
    if (format == "json") {
      o << "{\"n\":" << n << ",\"ncut\":" << ncut
        << ",\"dimension\":" << b.states.size() << ",\"entries\":[";
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) o << ",";
        o << "[";
        for (std::size_t j = 0; j < s[i].size(); ++j) {
          if (j) o << ",";
          o << "\"" << to_fraction_string(s[i][j]) << "\"";
        }
        o << "]";
      }
      o << "]}\n";
    } else {
      for (const auto& row : s) {
        for (std::size_t j = 0; j < row.size(); ++j)
          o << (j ? "," : "") << fmt_d(to_double(row[j]));
        o << "\n";
      }
    }
    return o.str();
  });
  return {payload, 0};
}

// ------------------------------------------------------------- families --

CmdResult cmd_families(int n, int ncut, const std::string& sector,
                       const std::string& tablePath,
                       const std::string& format) {
  std::optional<int> nf = parse_sector(sector);
  std::vector<std::pair<Family, int>> fams;
  if (!nf && tablePath.empty()) {
    fams = enumerate_families(n, ncut);
  } else {
    BrickTable t =
        tablePath.empty() ? BrickTable{n, *nf, {}} : load_brick_table(tablePath, n);
    if (nf && t.nF != *nf)
      throw std::invalid_argument("--sector disagrees with the brick table");
    fams = enumerate_families(n, ncut, t);
  }
  std::ostringstream o;
  if (format == "json") {
    o << "{\"n\":" << n << ",\"ncut\":" << ncut << ",\"families\":[";
    for (std::size_t i = 0; i < fams.size(); ++i) {
      const auto& [f, levels] = fams[i];
      if (i) o << ",";
      o << "{\"tail\":" << json_ints(f.pTail) << ",\"nB\":" << f.nB
        << ",\"alpha\":" << f.alpha << ",\"gamma\":\""
        << to_fraction_string(f.gamma(n)) << "\",\"levels\":" << levels << "}";
    }
    o << "]}\n";
  } else {
    o << "tail,nB,alpha,levels,gamma\n";
    for (const auto& [f, levels] : fams) {
      o << "\"";
      for (std::size_t i = 0; i < f.pTail.size(); ++i)
        o << (i ? " " : "") << f.pTail[i];
      o << "\"," << f.nB << "," << f.alpha << "," << levels << ","
        << to_fraction_string(f.gamma(n)) << "\n";
    }
  }
  return {o.str(), 0};
}

// ------------------------------------------------------------- spectrum --

struct NumericLevel {
  double e;
  int multiplicity;
};

std::vector<NumericLevel> group_levels(const std::vector<double>& es,
                                       double tol) {
  std::vector<NumericLevel> out;
  for (double e : es) {
    if (!out.empty() &&
        std::abs(e - out.back().e) <= tol * std::max(1.0, std::abs(e)))
      ++out.back().multiplicity;
    else
      out.push_back({e, 1});
  }
  return out;
}

CmdResult cmd_spectrum(int n, int ncut, const std::string& method,
                       const std::string& sector, const std::string& tablePath,
                       double tol, const std::string& format) {
  std::optional<int> nf = parse_sector(sector);
  const bool fermionic = nf.has_value() || !tablePath.empty();
  if (fermionic && method != "closed")
    throw std::invalid_argument(
        "fermionic sectors support --method closed only");

  SpectrumClosedForm closed;
  if (method == "closed" || method == "both") {
    if (fermionic) {
      BrickTable t = tablePath.empty() ? BrickTable{n, *nf, {}}
                                       : load_brick_table(tablePath, n);
      if (nf && t.nF != *nf)
        throw std::invalid_argument("--sector disagrees with the brick table");
      closed = theta_fermionic(n, ncut, t);
    } else {
      closed = theta_bosonic(n, ncut);
    }
  }

  SpectrumNumeric numeric;
  if (method == "numeric" || method == "both") {
    CutBasis b = enumerate_basis(n, ncut);
    numeric = solve_spectrum_numeric(hamiltonian_matrix(b), gram_matrix(b));
  }

  std::ostringstream o;
  int code = 0;

  if (method == "numeric") {
    auto groups = group_levels(numeric.eigenvalues, tol);
    if (format == "json") {
      o << "{\"n\":" << n << ",\"ncut\":" << ncut
        << ",\"method\":\"numeric\",\"levels\":[";
      for (std::size_t i = 0; i < groups.size(); ++i) {
        if (i) o << ",";
        o << "{\"index\":" << i << ",\"E\":" << fmt_d(groups[i].e)
          << ",\"multiplicity\":" << groups[i].multiplicity << "}";
      }
      o << "]}\n";
    } else {
      o << "index,E,multiplicity\n";
      for (std::size_t i = 0; i < groups.size(); ++i)
        o << i << "," << fmt_d(groups[i].e) << "," << groups[i].multiplicity
          << "\n";
    }
  } else if (method == "closed") {
    if (format == "json") {
      o << "{\"n\":" << n << ",\"ncut\":" << ncut
        << ",\"method\":\"closed\",\"levels\":[";
      for (std::size_t i = 0; i < closed.entries.size(); ++i) {
        const SpectrumEntry& s = closed.entries[i];
        if (i) o << ",";
        o << "{\"E\":" << fmt_d(s.e) << ",\"tail\":" << json_ints(s.family.pTail)
          << ",\"nB\":" << s.family.nB << ",\"alpha\":" << s.family.alpha
          << ",\"rootIndex\":" << s.rootIndex << "}";
      }
      o << "]}\n";
    } else {
      o << "E,tail,nB,rootIndex\n";
      for (const SpectrumEntry& s : closed.entries) {
        o << fmt_d(s.e) << ",\"";
        for (std::size_t i = 0; i < s.family.pTail.size(); ++i)
          o << (i ? " " : "") << s.family.pTail[i];
        o << "\"," << s.family.nB << "," << s.rootIndex << "\n";
      }
    }
  } else {  // both
    if (format != "json")
      throw std::invalid_argument("--method both reports as json only");
    std::vector<double> ce = closed.energies();
    const std::vector<double>& ne = numeric.eigenvalues;
    bool match = ce.size() == ne.size();
    double worst = 0.0;
    if (match)
      for (std::size_t i = 0; i < ce.size(); ++i) {
        double rel =
            std::abs(ce[i] - ne[i]) / std::max(1.0, std::abs(ne[i]));
        worst = std::max(worst, rel);
        if (rel > tol) match = false;
      }
    o << "{\"n\":" << n << ",\"ncut\":" << ncut
      << ",\"method\":\"both\",\"tolerance\":" << fmt_d(tol)
      << ",\"match\":" << (match ? "true" : "false")
      << ",\"count\":{\"numeric\":" << ne.size() << ",\"closed\":" << ce.size()
      << "},\"maxRelDiff\":" << fmt_d(worst) << ",\"numeric\":[";
    for (std::size_t i = 0; i < ne.size(); ++i)
      o << (i ? "," : "") << fmt_d(ne[i]);
    o << "],\"closed\":[";
    for (std::size_t i = 0; i < ce.size(); ++i)
      o << (i ? "," : "") << fmt_d(ce[i]);
    o << "]}\n";
    if (!match) code = 1;
  }
  return {o.str(), code};
}

// ---------------------------------------------------------------- state --

CmdResult cmd_state(int n, int ncut, const std::vector<int>& tail, int nb,
                    int alpha, int rootIndex, std::optional<double> energy,
                    const std::vector<int>& dress, const std::string& method,
                    double tol, const std::string& format) {
  Family fam{tail, nb, alpha};
  FamilySolution st;
  if (method == "finite") {
    double e;
    if (energy) {
      e = *energy;
    } else {
      int d = (ncut - fam.nB - fam.tail_weight()) / 2 + 1;
      if (ncut - fam.nB - fam.tail_weight() < 0 || d < 1)
        throw std::invalid_argument("family has no levels at this cutoff");
      std::vector<double> roots = laguerre_roots({d, fam.gamma(n)});
      if (rootIndex < 0 || rootIndex >= static_cast<int>(roots.size()))
        throw std::invalid_argument("root index out of range (0.." +
                                    std::to_string(roots.size() - 1) + ")");
      e = roots[rootIndex] / 2.0;
    }
    st = build_family_state(n, fam, e, FiniteMode{ncut});
  } else {
    if (!energy)
      throw std::invalid_argument("--method continuum needs --energy");
    st = build_family_state(n, fam, *energy, ContinuumMode{tol});
  }
  if (!dress.empty())
    st = dress_fermionic(st, std::set<int>(dress.begin(), dress.end()));

  // Generalized-eigenproblem residual; only the cut bosonic sector has the
  // numeric matrices to check against.
  std::optional<double> residual;
  if (method == "finite" && nb == 0 && alpha == -1) {
    CutBasis b = enumerate_basis(n, ncut);
    Eigen::VectorXd c = Eigen::VectorXd::Zero(b.states.size());
    for (std::size_t i = 0; i < b.states.size(); ++i) {
      auto it = st.coeffs.find(b.states[i]);
      if (it != st.coeffs.end()) c(static_cast<long>(i)) = it->second;
    }
    Eigen::MatrixXd he = to_eigen(hamiltonian_matrix(b).h);
    Eigen::MatrixXd se = to_eigen(gram_matrix(b));
    Eigen::VectorXd hc = he * c;
    residual = (hc - st.e * (se * c)).norm() / hc.norm();
  }

  std::ostringstream o;
  if (format == "json") {
    o << "{\"family\":" << json_ints(st.family.pTail)
      << ",\"nB\":" << st.family.nB << ",\"alpha\":" << st.family.alpha
      << ",\"nF\":" << st.nF << ",\"E\":" << fmt_d(st.e)
      << ",\"levels\":" << st.levels << ",\"residual\":"
      << (residual ? fmt_d(*residual) : "null") << ",\"coeffs\":[";
    bool first = true;
    for (const auto& [p, v] : st.coeffs) {
      if (!first) o << ",";
      first = false;
      o << "{\"p\":" << json_ints(p.p) << ",\"value\":" << fmt_d(v) << "}";
    }
    o << "]}\n";
  } else {
    o << "p,value\n";
    for (const auto& [p, v] : st.coeffs) {
      o << "\"";
      for (std::size_t i = 0; i < p.p.size(); ++i) o << (i ? " " : "") << p.p[i];
      o << "\"," << fmt_d(v) << "\n";
    }
  }
  return {o.str(), 0};
}

// ---------------------------------------------------------------- apply --

// Debug view of the engine: H|p> or (aa)|p> as a reduced expression in the
// stable text form, e.g. "3/2*(A2)(a1)".
CmdResult cmd_apply(int n, const std::vector<int>& occ, const std::string& op) {
  Partition p{occ};
  if (static_cast<int>(occ.size()) != n - 1)
    throw std::invalid_argument("--p needs the occupations p2..pN");
  TraceExpr e = op == "hamiltonian" ? apply_hamiltonian(p) : apply_lowering(p);
  return {e.str() + "\n", 0};
}

// --------------------------------------------------------------- verify --

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

TraceExpr op_aa(int n) {
  return TraceExpr::single(n, TraceWord::annihilators(2));
}
TraceExpr op_creators_pow(int n, int k, int m) {
  TraceExpr e = TraceExpr::identity(n);
  for (int i = 0; i < m; ++i)
    e = e * TraceExpr::single(n, TraceWord::creators(k));
  return e;
}

// Engine commutators against the hand-transcribed closed forms, exact.
std::vector<Check> run_appendix() {
  std::vector<Check> out;
  for (int n : {2, 3, 4, 5}) {
    int bad = 0, total = 0;
    for (int len = 2; len <= 6; ++len) {
      ++total;
      if (!(commutator(op_aa(n), op_creators_pow(n, len, 1)) ==
            comm_aa_single(n, len)))
        ++bad;
    }
    for (int len = 2; len <= 4; ++len)
      for (int m = 2; len * m <= 8; ++m) {
        ++total;
        if (!(commutator(op_aa(n), op_creators_pow(n, len, m)) ==
              comm_aa_power(n, len, m)))
          ++bad;
      }
    for (int p = 1; p <= 3; ++p)
      for (int m = 2; m <= 3; ++m)
        for (int k = 1; k <= 2; ++k) {
          ++total;
          if (!(commutator(TraceExpr::single(n, TraceWord::mixed(p, 1)),
                           op_creators_pow(n, m, k)) ==
                comm_mixed_power(n, p, m, k)))
            ++bad;
        }
    out.push_back({"commutators-N" + std::to_string(n), bad == 0,
                   std::to_string(total - bad) + "/" + std::to_string(total) +
                       " identities exact"});
  }
  return out;
}

std::vector<Check> run_recursion() {
  std::vector<Check> out;
  auto lookup = [](const Partition& p) {
    long h = 17;
    for (int v : p.p) h = h * 31 + v + 2;
    return frac(h % 97 + 1, h % 13 + 3);
  };
  const Rational e = frac(3, 7);

  int bad = 0;
  for (int p2 = 0; p2 <= 4; ++p2)
    for (int p3 = 0; p3 <= 4; ++p3)
      if (generic_row(Partition{{p2, p3}}, lookup, e) !=
          su3_printed_row(p2, p3, lookup, e))
        ++bad;
  out.push_back({"generic-vs-su3-rows", bad == 0,
                 bad == 0 ? "exact on 25 rows" : std::to_string(bad) + " rows differ"});

  bad = 0;
  for (int p2 = 0; p2 <= 3; ++p2)
    for (int p3 = 0; p3 <= 3; ++p3)
      for (int p4 = 0; p4 <= 2; ++p4)
        if (generic_row(Partition{{p2, p3, p4}}, lookup, e) !=
            su4_printed_row(p2, p3, p4, lookup, e))
          ++bad;
  out.push_back({"generic-vs-su4-rows", bad == 0,
                 bad == 0 ? "exact on 48 rows" : std::to_string(bad) + " rows differ"});

  for (auto [n, ncut] : {std::pair{3, 10}, std::pair{4, 8}}) {
    CutBasis b = enumerate_basis(n, ncut);
    SpectrumNumeric sp =
        solve_spectrum_numeric(hamiltonian_matrix(b), gram_matrix(b));
    double worst = 0.0;
    for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) {
      double scale = 0.0;
      for (double c : sp.eigenvectors[k]) scale = std::max(scale, std::abs(c));
      worst = std::max(worst, recursion_residual(sp.eigenvectors[k], n, ncut,
                                                 sp.eigenvalues[k]) /
                                  scale);
    }
    out.push_back({"eigenvector-rows-N" + std::to_string(n), worst <= 1e-8,
                   "worst residual " + fmt_d(worst)});
  }
  return out;
}

// Symbolic Gram / Hamiltonian elements against the dense-oscillator oracle.
std::vector<Check> run_oracle() {
  std::vector<Check> out;
  for (int n : {2, 3}) {
    CutBasis b = enumerate_basis(n, 6);
    RationalMatrix s = gram_matrix(b);
    HamiltonianMatrix h = hamiltonian_matrix(b);
    double worstS = 0.0, worstH = 0.0;
    for (std::size_t i = 0; i < b.states.size(); ++i)
      for (std::size_t j = i; j < b.states.size(); ++j) {
        worstS = std::max(worstS,
                          std::abs(to_double(s[i][j]) -
                                   oracle_inner_product(b.states[i],
                                                        b.states[j], n)));
        worstH = std::max(worstH,
                          std::abs(to_double(h.h[i][j]) -
                                   oracle_hamiltonian_element(
                                       b.states[i], b.states[j], n)));
      }
    out.push_back({"gram-oracle-N" + std::to_string(n), worstS <= 1e-10,
                   "worst abs diff " + fmt_d(worstS)});
    out.push_back({"hamiltonian-oracle-N" + std::to_string(n), worstH <= 1e-10,
                   "worst abs diff " + fmt_d(worstH)});
  }
  return out;
}

std::vector<Check> run_overlap() {
  std::vector<Check> out;
  for (int n : {3, 4}) {
    double worst = 0.0;
    for (double e : {0.5, 1.0, 2.0})
      for (double e2 : {0.5, 1.0, 2.0})
        for (double z : {0.3, 0.6, 0.9}) {
          OverlapPair o = continuum_overlap(n, e, e2, z);
          worst = std::max(worst, std::abs(o.series - o.closed) /
                                      std::max(std::abs(o.series), 1e-300));
        }
    out.push_back({"overlap-series-vs-closed-N" + std::to_string(n),
                   worst <= 1e-8, "worst rel diff " + fmt_d(worst)});
  }
  return out;
}

CmdResult cmd_verify(const std::string& suite) {
  std::vector<Check> checks;
  auto add = [&](std::vector<Check> v) {
    checks.insert(checks.end(), v.begin(), v.end());
  };
  if (suite == "appendix" || suite == "all") add(run_appendix());
  if (suite == "recursion" || suite == "all") add(run_recursion());
  if (suite == "oracle" || suite == "all") add(run_oracle());
  if (suite == "overlap" || suite == "all") add(run_overlap());

  bool allPass = true;
  std::ostringstream o;
  o << "{\"suite\":\"" << suite << "\",\"checks\":[";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    if (i) o << ",";
    o << "{\"name\":\"" << checks[i].name << "\",\"pass\":"
      << (checks[i].pass ? "true" : "false") << ",\"detail\":\""
      << checks[i].detail << "\"}";
    allPass = allPass && checks[i].pass;
  }
  o << "],\"pass\":" << (allPass ? "true" : "false") << "}\n";
  return {o.str(), allPass ? 0 : 1};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cut Fock-space solver for SU(N) supersymmetric matrix quantum "
      "mechanics: exact basis/Gram/Hamiltonian assembly, numeric and "
      "closed-form spectra, eigenstate export, cross-verification."};
  app.require_subcommand(1);

  int n = 2, ncut = 0;
  std::string format = "json", out, cacheDirFlag, sector = "bosonic";
  std::string tablePath, method, suite = "all";
  double tol = 1e-9;
  std::vector<int> tail, dress, occ;
  int nb = 0, alpha = -1, rootIndex = 0;
  std::optional<double> energy;
  std::string op = "hamiltonian";

  auto add_common = [&](CLI::App* c, bool needNcut = true) {
    c->add_option("--n", n, "gauge rank N")->required()->check(CLI::Range(2, 64));
    if (needNcut)
      c->add_option("--ncut", ncut, "cutoff on total quanta")
          ->required()
          ->check(CLI::NonNegativeNumber);
    c->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    c->add_option("--out", out, "write the report to a file");
    c->add_option("--cache-dir", cacheDirFlag,
                  "cache directory (env SYMQM_CACHE overrides)");
  };

  CLI::App* cBasis = app.add_subcommand("basis", "enumerate the cut basis");
  add_common(cBasis);

  CLI::App* cGram = app.add_subcommand("gram", "exact Gram matrix of the cut basis");
  add_common(cGram);

  CLI::App* cFamilies = app.add_subcommand("families", "eigenstate towers at a cutoff");
  add_common(cFamilies);
  cFamilies->add_option("--sector", sector, "'bosonic' or a fermion number");
  cFamilies->add_option("--brick-table", tablePath, "composite-brick table (json)");

  CLI::App* cSpectrum = app.add_subcommand("spectrum", "numeric and/or closed-form spectrum");
  add_common(cSpectrum);
  cSpectrum->add_option("--method", method, "numeric|closed|both")
      ->default_val("both")
      ->check(CLI::IsMember({"numeric", "closed", "both"}));
  cSpectrum->add_option("--sector", sector, "'bosonic' or a fermion number");
  cSpectrum->add_option("--brick-table", tablePath, "composite-brick table (json)");
  cSpectrum->add_option("--tol", tol, "relative agreement tolerance");

  CLI::App* cState = app.add_subcommand("state", "export one closed-form eigenstate");
  add_common(cState);
  cState->add_option("--family", tail, "tail occupations p3..pN")
      ->delimiter(',')
      ->required();
  cState->add_option("--nb", nb, "bosonic operators of the dressing brick");
  cState->add_option("--alpha", alpha, "brick label (-1: bosonic sector)");
  cState->add_option("--root", rootIndex, "root index within the family");
  cState->add_option("--energy", energy, "energy (required for continuum)");
  cState->add_option("--dress", dress, "fermionic brick sizes to tag")
      ->delimiter(',');
  cState->add_option("--method", method, "finite|continuum")
      ->default_val("finite")
      ->check(CLI::IsMember({"finite", "continuum"}));
  cState->add_option("--tol", tol, "continuum truncation tolerance");

  CLI::App* cVerify = app.add_subcommand("verify", "run a cross-check suite");
  cVerify->add_option("--suite", suite, "appendix|recursion|oracle|overlap|all")
      ->check(CLI::IsMember({"appendix", "recursion", "oracle", "overlap", "all"}));
  cVerify->add_option("--out", out, "write the report to a file");

  CLI::App* cApply = app.add_subcommand(
      "apply", "debug: print a reduced operator image of a basis state");
  cApply->add_option("--n", n, "gauge rank N")->required()->check(CLI::Range(2, 64));
  cApply->add_option("--p", occ, "occupations p2..pN")->delimiter(',')->required();
  cApply->add_option("--op", op, "hamiltonian|lowering")
      ->check(CLI::IsMember({"hamiltonian", "lowering"}));
  cApply->add_option("--out", out, "write the output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? 0 : 2;
  }

  try {
    std::string cacheDir = resolve_cache_dir(cacheDirFlag);
    CmdResult r;
    if (cBasis->parsed())
      r = cmd_basis(n, ncut, format, cacheDir);
    else if (cGram->parsed())
      r = cmd_gram(n, ncut, format, cacheDir);
    else if (cFamilies->parsed())
      r = cmd_families(n, ncut, sector, tablePath, format);
    else if (cSpectrum->parsed())
      r = cmd_spectrum(n, ncut, method.empty() ? "both" : method, sector,
                       tablePath, tol, format);
    else if (cState->parsed())
      r = cmd_state(n, ncut, tail, nb, alpha, rootIndex, energy, dress,
                    method.empty() ? "finite" : method, tol, format);
    else if (cVerify->parsed())
      r = cmd_verify(suite);
    else if (cApply->parsed())
      r = cmd_apply(n, occ, op);
    deliver(r.payload, out);
    return r.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
