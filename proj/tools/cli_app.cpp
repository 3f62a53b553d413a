#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnls/bae.hpp"
#include "qnls/momrep.hpp"
#include "qnls/serialize.hpp"
#include "qnls/suites.hpp"
#include "qnls/wavefn.hpp"

namespace qnls::cli {
namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kKeys{"n",    "gamma", "length",  "lambda", "quantum-numbers", "seed",
                                  "out",  "suite", "max-n",   "points", "allow-degenerate", "grid",
                                  "samples", "json", "max-iterations"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.push_back("");
  return parts;
}

long long parse_integer(const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

// Flag values first, config file values as fallback.
class Settings {
 public:
  std::map<std::string, std::string> values;

  bool has(const std::string& k) const { return values.count(k) > 0; }
  const std::string& str(const std::string& k) const { return values.at(k); }

  double real(const std::string& k, double fallback) const {
    return has(k) ? checked(k, [&] { return parse_real(str(k)); }) : fallback;
  }
  long long integer(const std::string& k, long long fallback) const {
    return has(k) ? checked(k, [&] { return parse_integer(str(k)); }) : fallback;
  }
  bool flag(const std::string& k) const {
    if (!has(k)) return false;
    const std::string v = str(k);
    if (v == "true" || v == "1" || v.empty()) return true;
    if (v == "false" || v == "0") return false;
    throw UsageError("--" + k + ": expected true or false, got '" + v + "'");
  }
  std::string path(const std::string& k) const { return has(k) ? str(k) : "-"; }

  template <class F>
  auto checked(const std::string& k, F f) const -> decltype(f()) {
    try {
      return f();
    } catch (const std::invalid_argument& e) {
      throw UsageError("--" + k + ": " + e.what());
    }
  }
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file " + path);
  f << text;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Registers string-valued options on a subcommand; only those given on the
// command line end up in the settings.
class OptionSet {
 public:
  explicit OptionSet(CLI::App* app) : app_(app) {}

  void add(const std::string& key, const std::string& help) {
    opts_.emplace_back(key, app_->add_option("--" + key, storage_[key], help));
  }
  void add_flag(const std::string& key, const std::string& help) {
    flags_.emplace_back(key, app_->add_flag("--" + key, help));
  }

  Settings collect(const std::map<std::string, std::string>& config) const {
    Settings s;
    for (const auto& [k, o] : opts_)
      if (o->count() > 0) s.values[k] = storage_.at(k);
    for (const auto& [k, o] : flags_)
      if (o->count() > 0) s.values[k] = "true";
    for (const auto& [k, v] : config) s.values.emplace(k, v);
    return s;
  }

 private:
  CLI::App* app_;
  std::map<std::string, std::string> storage_;
  std::vector<std::pair<std::string, CLI::Option*>> opts_;
  std::vector<std::pair<std::string, CLI::Option*>> flags_;
};

struct Model {
  int n = 0;
  double gamma = 1.0;
  double L = 10.0;
};

Model model_settings(const Settings& s) {
  Model m;
  m.gamma = s.real("gamma", 1.0);
  m.L = s.real("length", 10.0);
  if (!(m.L > 0.0)) throw UsageError("--length must be positive");
  if (s.has("n")) {
    m.n = static_cast<int>(s.integer("n", 0));
    if (m.n < 1 || m.n > 8) throw UsageError("--n must be between 1 and 8");
  }
  return m;
}

QuantumNumbers quantum_numbers(const Settings& s, int& n) {
  std::vector<double> values;
  if (s.has("quantum-numbers")) {
    values = s.checked("quantum-numbers", [&] { return parse_real_list(s.str("quantum-numbers")); });
    if (n != 0 && n != static_cast<int>(values.size()))
      throw UsageError("--n does not match the number of quantum numbers");
    n = static_cast<int>(values.size());
  } else {
    if (n == 0) throw UsageError("give --n or --quantum-numbers");
    for (int j = 1; j <= n; ++j) values.push_back(j - (n + 1) / 2.0);  // centered ground state
  }
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw UsageError("quantum numbers must be distinct");
  return s.checked("quantum-numbers", [&] { return QuantumNumbers::from_values(values); });
}

BaeSolution solve_checked(const QuantumNumbers& qn, const Model& m, int max_iterations) {
  if (!(m.gamma > 0.0)) throw UsageError("solve needs --gamma > 0");
  try {
    return solve_bae(qn, m.gamma, m.L, max_iterations);
  } catch (const ConvergenceError& e) {
    throw NonConvergence(e.what());
  }
}

// ---- solve ----

int cmd_solve(const Settings& s, std::ostream& out) {
  Model m = model_settings(s);
  const QuantumNumbers qn = quantum_numbers(s, m.n);
  const int max_it = static_cast<int>(s.integer("max-iterations", 100));
  if (max_it < 0) throw UsageError("--max-iterations must be non-negative");
  const json j = solve_checked(qn, m, max_it);
  write_output(s.path("out"), j.dump(2) + "\n", out);
  return kOk;
}

// ---- eval ----

std::vector<std::vector<double>> grid_points(int n, double L, int k) {
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(n, 0);
  const double h = k > 1 ? L / (k - 1) : 0.0;
  for (;;) {
    std::vector<double> x(n);
    for (int a = 0; a < n; ++a) x[a] = k > 1 ? -L / 2 + h * idx[a] : 0.0;
    pts.push_back(std::move(x));
    int a = n - 1;
    while (a >= 0 && ++idx[a] == k) idx[a--] = 0;
    if (a < 0) break;
  }
  return pts;
}

std::vector<std::vector<double>> sample_points(int n, double L, int count, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-L / 2, L / 2);
  std::vector<std::vector<double>> pts(count, std::vector<double>(n));
  for (auto& x : pts)
    for (auto& v : x) v = u(g);
  return pts;
}

int cmd_eval(const Settings& s, std::ostream& out) {
  Model m = model_settings(s);
  if (s.has("lambda") == s.has("quantum-numbers")) throw UsageError("give exactly one of --lambda and --quantum-numbers");

  std::vector<cplx> lambda;
  if (s.has("lambda")) {
    lambda = s.checked("lambda", [&] { return parse_complex_list(s.str("lambda")); });
    if (m.n != 0 && m.n != static_cast<int>(lambda.size())) throw UsageError("--n does not match the number of rapidities");
    m.n = static_cast<int>(lambda.size());
  } else {
    const auto sol = solve_checked(quantum_numbers(s, m.n), m, 100);
    lambda = sol.rapidities.lambda;
  }
  if (m.n < 1 || m.n > 6) throw UsageError("eval supports 1 to 6 particles");

  const RapiditySet r = make_rapidities(lambda, m.gamma, m.L);
  AlcoveFunction psi, Psi;
  bool degenerate = false;
  double accuracy = 0.0;
  try {
    psi = prewavefunction(r);
    Psi = bethe_wavefunction(r);
  } catch (const RegularityError&) {
    if (!s.flag("allow-degenerate")) throw UsageError("rapidities coincide; pass --allow-degenerate to evaluate the limit");
    try {
      auto lim = prewavefunction_degenerate(r);
      psi = std::move(lim.value);
      accuracy = lim.accuracy;
    } catch (const ExtrapolationError& e) {
      throw NonConvergence(e.what());
    }
    Psi = symmetrize(psi);
    degenerate = true;
  }
  // both are continuous, so points on walls are well defined
  psi.set_continuous(true);
  Psi.set_continuous(true);

  if (s.has("grid") && s.has("samples")) throw UsageError("give at most one of --grid and --samples");
  std::vector<std::vector<double>> pts;
  std::string layout;
  if (s.has("samples")) {
    const long long count = s.integer("samples", 0);
    if (count < 1 || count > 1000000) throw UsageError("--samples must be between 1 and 1000000");
    const auto seed = static_cast<std::uint64_t>(s.integer("seed", 1));
    pts = sample_points(m.n, m.L, static_cast<int>(count), seed);
    layout = "samples=" + std::to_string(count) + " seed=" + std::to_string(seed);
  } else {
    const long long k = s.integer("grid", 11);
    if (k < 1 || std::pow(static_cast<double>(k), m.n) > 1e6) throw UsageError("--grid must be at least 1 with at most 1e6 points");
    pts = grid_points(m.n, m.L, static_cast<int>(k));
    layout = "grid=" + std::to_string(k) + " per axis on [-L/2, L/2]";
  }

  std::ostringstream csv;
  csv << "# qnls eval\n";
  csv << "# N=" << m.n << "\n";
  csv << "# gamma=" << format_real(m.gamma) << "\n";
  csv << "# L=" << format_real(m.L) << "\n";
  csv << "# lambda=";
  for (int j = 0; j < m.n; ++j) csv << (j ? "," : "") << format_complex(lambda[j]);
  csv << "\n# points: " << layout << "\n";
  if (degenerate) csv << "# degenerate limit, extrapolation accuracy " << format_real(accuracy) << "\n";
  csv << "# columns: coordinates x1..xN, pre-wavefunction psi, symmetric Bethe wavefunction Psi\n";
  for (int a = 1; a <= m.n; ++a) csv << "x" << a << ",";
  csv << "re_psi,im_psi,re_Psi,im_Psi\n";
  for (const auto& x : pts) {
    for (double v : x) csv << format_real(v) << ",";
    const cplx a = psi(x), b = Psi(x);
    csv << format_real(a.real()) << "," << format_real(a.imag()) << "," << format_real(b.real()) << ","
        << format_real(b.imag()) << "\n";
  }
  write_output(s.path("out"), csv.str(), out);

  if (s.has("json")) {
    json j;
    j["N"] = m.n;
    j["gamma"] = m.gamma;
    j["L"] = m.L;
    j["lambda"] = json::array();
    for (const auto& l : lambda) j["lambda"].push_back(complex_to_json(l));
    j["psi"] = psi;
    j["Psi"] = Psi;
    write_output(s.str("json"), j.dump() + "\n", out);
  }
  return kOk;
}

// ---- verify ----

int cmd_verify(const Settings& s, std::ostream& out) {
  SuiteConfig cfg;
  cfg.n = static_cast<int>(s.integer("n", cfg.n));
  cfg.max_n = static_cast<int>(s.integer("max-n", cfg.max_n));
  cfg.gamma = s.real("gamma", cfg.gamma);
  cfg.L = s.real("length", cfg.L);
  cfg.points = static_cast<int>(s.integer("points", cfg.points));
  const long long seed = s.integer("seed", 1);
  if (seed < 0) throw UsageError("--seed must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  if (cfg.n < 1 || cfg.n > 4) throw UsageError("--n must be between 1 and 4");
  if (cfg.max_n < 1 || cfg.max_n > 5) throw UsageError("--max-n must be between 1 and 5");
  if (!(cfg.L > 0.0)) throw UsageError("--length must be positive");
  if (cfg.points < 1 || cfg.points > 10000) throw UsageError("--points must be between 1 and 10000");

  std::vector<std::string> names;
  if (!s.has("suite") || s.str("suite") == "all") {
    names = suite_names();
  } else {
    for (const auto& part : split(s.str("suite"), ',')) {
      try {
        const auto name = canonical_suite_name(part);
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      } catch (const UnknownSuiteError& e) {
        throw UsageError(e.what());
      }
    }
  }

  // one worker per suite; rows are gathered in suite order
  std::vector<std::future<std::vector<IdentityResult>>> jobs;
  for (const auto& name : names) jobs.push_back(std::async(std::launch::async, [name, cfg] { return run_suite(name, cfg); }));

  json report;
  report["config"] = {{"n", cfg.n},       {"max_n", cfg.max_n},   {"gamma", cfg.gamma},
                      {"L", cfg.L},       {"seed", cfg.seed},     {"points", cfg.points}};
  report["suites"] = json::array();
  bool pass = true;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const auto rows = jobs[k].get();
    const bool ok = all_pass(rows);
    pass = pass && ok;
    report["suites"].push_back({{"suite", names[k]}, {"pass", ok}, {"identities", rows}});
  }
  report["pass"] = pass;
  write_output(s.path("out"), report.dump(2) + "\n", out);
  return pass ? kOk : kIdentityFailure;
}

// ---- report ----

int cmd_report(const std::string& input, const Settings& s, std::ostream& out) {
  std::ifstream f(input);
  if (!f) throw UsageError("cannot read " + input);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(input + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("suites") || !j["suites"].is_array()) throw UsageError(input + ": not a verify report");

  std::ostringstream text;
  std::vector<std::string> failures;
  bool pass = true;
  text << std::left << std::setw(22) << "suite" << std::right << std::setw(8) << "passed" << std::setw(8) << "total"
       << std::setw(16) << "worst res/tol" << "\n";
  try {
    for (const auto& suite : j["suites"]) {
      const std::string name = suite.at("suite").get<std::string>();
      int passed = 0, total = 0;
      double worst = 0.0;
      for (const auto& row : suite.at("identities")) {
        ++total;
        const bool ok = row.at("pass").get<bool>();
        const double tol = row.at("tolerance").get<double>();
        const double res = row.at("max_residual").is_number() ? row.at("max_residual").get<double>() : NAN;
        if (ok) {
          ++passed;
          if (tol > 0 && res <= tol) worst = std::max(worst, res / tol);
        } else {
          std::ostringstream line;
          line << "  " << name << "  " << row.at("identity_id").get<std::string>() << "  n=" << row.at("n").get<int>()
               << "  residual=" << res << "  tolerance=" << tol;
          if (row.contains("error")) line << "  error: " << row["error"].get<std::string>();
          failures.push_back(line.str());
        }
      }
      pass = pass && passed == total;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.2e", worst);
      text << std::left << std::setw(22) << name << std::right << std::setw(8) << passed << std::setw(8) << total
           << std::setw(16) << buf << "\n";
    }
  } catch (const json::exception& e) {
    throw UsageError(input + ": malformed report: " + e.what());
  }
  if (j.contains("pass") && j["pass"].is_boolean()) pass = pass && j["pass"].get<bool>();
  if (!failures.empty()) {
    text << "failing identities:\n";
    for (const auto& l : failures) text << l << "\n";
  }
  text << "overall: " << (pass ? "PASS" : "FAIL") << "\n";
  write_output(s.path("out"), text.str(), out);
  return pass ? kOk : kIdentityFailure;
}

}  // namespace

double parse_real(const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(v)) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

cplx parse_complex(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty number");
  if (t.back() != 'i') return parse_real(t);
  const std::string body = t.substr(0, t.size() - 1);
  auto imag = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part);
  };
  // split before the last sign that is not an exponent sign
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E')
      return {parse_real(body.substr(0, p)), imag(body.substr(p))};
  }
  return {0.0, imag(body)};
}

std::vector<cplx> parse_complex_list(const std::string& s) {
  std::vector<cplx> v;
  for (const auto& p : split(s, ',')) v.push_back(parse_complex(p));
  if (v.empty()) throw std::invalid_argument("empty list");
  return v;
}

std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& p : split(s, ',')) v.push_back(parse_real(p));
  if (v.empty()) throw std::invalid_argument("empty list");
  return v;
}

std::string format_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  std::map<std::string, std::string> out;

  if (trim(text).rfind('{', 0) == 0) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(path + ": " + e.what());
    }
    if (j.contains("N")) {
      BaeRequest req;
      try {
        req = j.get<BaeRequest>();
      } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
      }
      out["n"] = std::to_string(req.N);
      out["gamma"] = format_real(req.gamma);
      out["length"] = format_real(req.L);
      std::string qn;
      for (double v : req.n) qn += (qn.empty() ? "" : ",") + format_real(v);
      if (!qn.empty()) out["quantum-numbers"] = qn;
      return out;
    }
    for (const auto& [k, v] : j.items()) {
      if (!kKeys.count(k)) throw std::invalid_argument(path + ": unknown key '" + k + "'");
      if (v.is_string()) {
        out[k] = v.get<std::string>();
      } else if (v.is_array()) {
        std::string joined;
        for (const auto& e : v) joined += (joined.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
        out[k] = joined;
      } else {
        out[k] = v.dump();
      }
    }
    return out;
  }

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!kKeys.count(key)) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    out[key] = value;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum nonlinear Schroedinger model: Bethe equations, wavefunctions and identity checks", "qnls"};
  app.require_subcommand(1);
  std::string config_path;

  auto* solve = app.add_subcommand("solve", "Solve the Bethe equations and print the rapidities as JSON");
  auto* eval = app.add_subcommand("eval", "Evaluate psi and Psi on a grid or at random points, as CSV");
  auto* verify = app.add_subcommand("verify", "Run the verification suites and print a JSON report");
  auto* report = app.add_subcommand("report", "Summarize a verify report; exit 3 if any identity failed");

  std::map<CLI::App*, OptionSet> sets;
  for (auto* sub : {solve, eval, verify, report}) {
    sub->add_option("--config", config_path, "key=value or JSON file; flags take precedence");
    sets.emplace(sub, OptionSet(sub));
  }
  auto& so = sets.at(solve);
  so.add("n", "particle number (default: number of quantum numbers)");
  so.add("gamma", "coupling, must be positive (default 1)");
  so.add("length", "box length L (default 10)");
  so.add("quantum-numbers", "comma-separated, distinct; half-integers for even N (default: centered ground state)");
  so.add("max-iterations", "Newton iteration limit (default 100)");
  so.add("out", "output file (default stdout)");

  auto& eo = sets.at(eval);
  eo.add("n", "particle number");
  eo.add("gamma", "coupling (default 1)");
  eo.add("length", "box length L (default 10)");
  eo.add("lambda", "comma-separated rapidities, e.g. 0.5,-0.3+0.1i");
  eo.add("quantum-numbers", "solve for the rapidities first");
  eo.add("grid", "points per axis on [-L/2, L/2] (default 11)");
  eo.add("samples", "uniform random points instead of a grid");
  eo.add("seed", "seed for --samples (default 1)");
  eo.add_flag("allow-degenerate", "evaluate the limit at coinciding rapidities");
  eo.add("json", "also write psi and Psi as JSON to this file");
  eo.add("out", "CSV output file (default stdout)");

  auto& vo = sets.at(verify);
  vo.add("suite", "comma-separated suite names, or all (default)");
  vo.add("n", "particle number for the operator suites (default 2)");
  vo.add("max-n", "upper particle number for sweeping suites (default 3)");
  vo.add("gamma", "coupling (default 1)");
  vo.add("length", "box length L (default 10)");
  vo.add("seed", "sampling seed (default 1)");
  vo.add("points", "sample points per comparison (default 20)");
  vo.add("out", "output file (default stdout)");

  std::string report_input;
  report->add_option("input", report_input, "JSON written by verify")->required();
  sets.at(report).add("out", "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    std::map<std::string, std::string> config;
    if (!config_path.empty()) config = read_config(config_path);
    if (solve->parsed()) return cmd_solve(sets.at(solve).collect(config), out);
    if (eval->parsed()) return cmd_eval(sets.at(eval).collect(config), out);
    if (verify->parsed()) return cmd_verify(sets.at(verify).collect(config), out);
    return cmd_report(report_input, sets.at(report).collect(config), out);
  } catch (const NonConvergence& e) {
    err << "qnls: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::invalid_argument& e) {
    err << "qnls: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "qnls: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "qnls: " << e.what() << "\n";
    return kNonConvergence;
  }
}

}  // namespace qnls::cli
