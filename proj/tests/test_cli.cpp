#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "json.hpp"
#include "qnls/wavefn.hpp"
#include "support.hpp"

using namespace qnls;
using namespace testsupport;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const cplx I(0.0, 1.0);

struct Run {
  int code;
  std::string out, err;
};

Run qnls_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_file(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "qnls_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<double> solved_lambda(const Run& r) {
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  std::vector<double> lam;
  for (const auto& z : j.at("lambda")) {
    CHECK(z[1].get<double>() == 0.0);
    lam.push_back(z[0].get<double>());
  }
  return lam;
}

struct Csv {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv c;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) {
      const auto eq = line.find('=');
      if (eq != std::string::npos && line.find(':') == std::string::npos)
        c.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (c.header.empty()) {
      c.header = cells;
      continue;
    }
    std::vector<double> row;
    for (const auto& s : cells) row.push_back(std::stod(s));
    c.rows.push_back(row);
  }
  return c;
}

cplx plane(const std::vector<cplx>& lam, const std::vector<double>& x) {
  cplx s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += lam[j] * x[j];
  return std::exp(I * s);
}

}  // namespace

TEST_CASE("complex number syntax") {
  CHECK(cli::parse_complex("1.5+0.2i") == cplx(1.5, 0.2));
  CHECK(cli::parse_complex("-0.3i") == cplx(0.0, -0.3));
  CHECK(cli::parse_complex("2") == cplx(2.0, 0.0));
  CHECK(cli::parse_complex("1e-3-2e-1i") == cplx(1e-3, -0.2));
  CHECK(cli::parse_complex("-1E+2+i") == cplx(-100.0, 1.0));
  CHECK(cli::parse_complex(" 0.5 - 1i ") == cplx(0.5, -1.0));
  CHECK(cli::parse_complex("i") == cplx(0.0, 1.0));
  for (const char* bad : {"", "abc", "1.5+", "1+2j", "nan", "1..2i"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(cli::parse_complex(bad), std::invalid_argument);
  }
  auto g = rng(1);
  for (int t = 0; t < 200; ++t) {
    const cplx z = random_complex(g, 1e3, 1e-3);
    CHECK(cli::parse_complex(cli::format_complex(z)) == z);
  }
  CHECK(cli::parse_complex_list("0.5, -0.3+0.1i").size() == 2);
}

TEST_CASE("solve: two particles at the documented example") {
  const auto r = qnls_run({"solve", "--n", "2", "--gamma", "1", "--length", "10", "--quantum-numbers", "-0.5,0.5"});
  const auto lam = solved_lambda(r);
  REQUIRE(lam.size() == 2);
  CHECK(lam[0] < lam[1]);
  CHECK(std::abs(lam[0] + lam[1]) < 1e-12);
  CHECK(json::parse(r.out).at("residual").get<double>() < 1e-10);
}

TEST_CASE("solve: one particle is a free momentum") {
  for (double n : {-2.0, 0.0, 3.0}) {
    const auto r = qnls_run({"solve", "--gamma", "0.7", "--length", "6", "--quantum-numbers=" + std::to_string(n)});
    const auto lam = solved_lambda(r);
    CHECK(std::abs(lam[0] - 2.0 * M_PI * n / 6.0) < 1e-13);
  }
}

TEST_CASE("solve: permuting quantum numbers permutes the rapidities") {
  const auto base = solved_lambda(qnls_run({"solve", "--gamma", "2", "--quantum-numbers=-1,0,2"}));
  const auto perm = solved_lambda(qnls_run({"solve", "--gamma", "2", "--quantum-numbers=2,-1,0"}));
  REQUIRE(perm.size() == 3);
  CHECK(std::abs(perm[0] - base[2]) < 1e-12);
  CHECK(std::abs(perm[1] - base[0]) < 1e-12);
  CHECK(std::abs(perm[2] - base[1]) < 1e-12);
  // centered default
  const auto centered = solved_lambda(qnls_run({"solve", "--gamma", "2", "--n", "3"}));
  CHECK(std::abs(centered[1]) < 1e-14);
}

TEST_CASE("solve: exit codes") {
  CHECK(qnls_run({"solve", "--gamma", "0", "--n", "2"}).code == 1);
  CHECK(qnls_run({"solve", "--gamma", "-1", "--n", "2"}).code == 1);
  CHECK(qnls_run({"solve", "--quantum-numbers=0,1"}).code == 1);       // integers for even N
  CHECK(qnls_run({"solve", "--quantum-numbers=0.5,0.5"}).code == 1);   // repeated
  CHECK(qnls_run({"solve", "--quantum-numbers=0.5,x"}).code == 1);
  CHECK(qnls_run({"solve", "--n", "3", "--quantum-numbers=0.5,-0.5"}).code == 1);
  CHECK(qnls_run({"solve", "--bogus"}).code == 1);
  CHECK(qnls_run({}).code == 1);
  CHECK(qnls_run({"--help"}).code == 0);
  CHECK(qnls_run({"solve", "--n", "3", "--max-iterations", "0"}).code == 2);
}

TEST_CASE("config files, with flags taking precedence") {
  const auto kv = temp_file("solve.cfg");
  write_file(kv, "# two particles\nn = 2\ngamma = 1\nlength = 10\nquantum-numbers = -0.5, 0.5\n");
  const auto from_file = solved_lambda(qnls_run({"solve", "--config", kv.string()}));
  const auto from_flags =
      solved_lambda(qnls_run({"solve", "--gamma", "1", "--length", "10", "--quantum-numbers=-0.5,0.5"}));
  CHECK(from_file == from_flags);
  const auto overridden = solved_lambda(qnls_run({"solve", "--config", kv.string(), "--gamma", "3"}));
  CHECK(overridden[1] != from_file[1]);

  const auto js = temp_file("solve.json");
  write_file(js, R"({"N": 2, "gamma": 1.0, "L": 10.0, "n": [-0.5, 0.5]})");
  CHECK(solved_lambda(qnls_run({"solve", "--config", js.string()})) == from_file);

  const auto bad = temp_file("bad.cfg");
  write_file(bad, "colour = blue\n");
  CHECK(qnls_run({"solve", "--config", bad.string()}).code == 1);
  write_file(bad, "{\"N\": 2, \"gamma\": ");
  CHECK(qnls_run({"solve", "--config", bad.string()}).code == 1);
  CHECK(qnls_run({"solve", "--config", temp_file("missing.cfg").string()}).code == 1);
}

TEST_CASE("eval: free case gives plane waves") {
  const std::vector<cplx> lam{0.7, -1.2};
  const auto r = qnls_run({"eval", "--gamma", "0", "--length", "4", "--lambda=0.7,-1.2", "--grid", "7"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"x1", "x2", "re_psi", "im_psi", "re_Psi", "im_Psi"});
  REQUIRE(csv.rows.size() == 49);
  for (const auto& row : csv.rows) {
    const std::vector<double> x{row[0], row[1]};
    CHECK(rel(cplx(row[2], row[3]), plane(lam, x)) < 1e-13);
    const cplx sym = 0.5 * (plane(lam, x) + plane({lam[1], lam[0]}, x));
    CHECK(rel(cplx(row[4], row[5]), sym) < 1e-13);
  }
}

TEST_CASE("eval: two particles against the closed forms") {
  const double gamma = 0.9;
  const std::vector<cplx> lam{cplx(0.8, 0.1), cplx(-0.4, -0.05)};
  const std::vector<cplx> swapped{lam[1], lam[0]};
  const auto r = qnls_run({"eval", "--gamma", "0.9", "--length", "5", "--lambda=0.8+0.1i,-0.4-0.05i", "--samples", "40",
                           "--seed", "7"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 40);
  const cplx d = lam[0] - lam[1];
  for (const auto& row : csv.rows) {
    const std::vector<double> x{row[0], row[1]};
    const cplx e = plane(lam, x), es = plane(swapped, x);
    const cplx psi = x[0] > x[1] ? e : e - gamma * (e - es) / (I * d);
    const double sgn = x[0] > x[1] ? 1.0 : -1.0;
    const cplx Psi = 0.5 * ((1.0 - I * gamma * sgn / d) * e + (1.0 + I * gamma * sgn / d) * es);
    CHECK(rel(cplx(row[2], row[3]), psi) < 1e-12);
    CHECK(rel(cplx(row[4], row[5]), Psi) < 1e-12);
  }
}

TEST_CASE("eval: CSV round trip through the library") {
  const auto out = temp_file("eval.csv");
  const auto r = qnls_run({"eval", "--quantum-numbers=-1,0,1", "--gamma", "1.3", "--length", "8", "--grid", "6", "--out",
                           out.string()});
  REQUIRE(r.code == 0);
  std::ifstream f(out);
  std::stringstream buf;
  buf << f.rdbuf();
  const auto csv = parse_csv(buf.str());
  REQUIRE(csv.meta.count("lambda") == 1);
  const auto lam = cli::parse_complex_list(csv.meta.at("lambda"));
  const auto rap = make_rapidities(lam, cli::parse_real(csv.meta.at("gamma")), cli::parse_real(csv.meta.at("L")));
  auto psi = prewavefunction(rap);
  auto Psi = bethe_wavefunction(rap);
  psi.set_continuous(true);
  Psi.set_continuous(true);
  REQUIRE(csv.rows.size() == 216);
  double worst = 0.0;
  for (const auto& row : csv.rows) {
    const std::vector<double> x{row[0], row[1], row[2]};
    worst = std::max({worst, rel(cplx(row[3], row[4]), psi(x)), rel(cplx(row[5], row[6]), Psi(x))});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("eval: degenerate rapidities need the explicit flag") {
  CHECK(qnls_run({"eval", "--lambda=0.6,0.6", "--gamma", "0.7", "--length", "4"}).code == 1);
  const auto r = qnls_run({"eval", "--lambda=0.6,0.6", "--gamma", "0.7", "--length", "4", "--allow-degenerate", "--samples",
                           "30"});
  REQUIRE(r.code == 0);
  for (const auto& row : parse_csv(r.out).rows) {
    const double step = row[1] > row[0] ? row[1] - row[0] : 0.0;
    const cplx expect = std::exp(I * 0.6 * (row[0] + row[1])) * (1.0 + 0.7 * step);
    CHECK(rel(cplx(row[2], row[3]), expect) < 1e-6);
  }
}

TEST_CASE("eval: usage errors and JSON dump") {
  CHECK(qnls_run({"eval", "--gamma", "1"}).code == 1);
  CHECK(qnls_run({"eval", "--lambda=0.1,0.2", "--quantum-numbers=-0.5,0.5"}).code == 1);
  CHECK(qnls_run({"eval", "--lambda=0.1,0.2", "--grid", "3", "--samples", "3"}).code == 1);
  CHECK(qnls_run({"eval", "--lambda=0.1,0.2", "--n", "3"}).code == 1);
  const auto js = temp_file("eval.json");
  REQUIRE(qnls_run({"eval", "--lambda=0.1,0.9", "--grid", "2", "--json", js.string()}).code == 0);
  std::ifstream f(js);
  const auto j = json::parse(f);
  CHECK(j.at("N") == 2);
  CHECK(j.at("psi").at("pieces").size() == 2);
  CHECK(j.at("Psi").at("continuous") == true);
}

TEST_CASE("identical inputs give byte-identical output") {
  const std::vector<std::string> e{"eval", "--lambda=0.3+0.1i,-0.9", "--samples", "25", "--seed", "4"};
  CHECK(qnls_run(e).out == qnls_run(e).out);
  const std::vector<std::string> v{"verify", "--suite", "appendix-a,dAHA-axioms", "--points", "4", "--seed", "9"};
  const auto a = qnls_run(v), b = qnls_run(v);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("verify: ABA at three particles lists transfer eigenvalue rows") {
  const auto r = qnls_run({"verify", "--suite", "aba", "--n", "3", "--points", "6"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j.at("suites").size() == 1);
  CHECK(j["suites"][0]["suite"] == "ABA");
  int transfer = 0;
  for (const auto& row : j["suites"][0]["identities"])
    if (row["identity_id"] == "transfer-eigenvalue" && row["n"] == 3) {
      ++transfer;
      CHECK(row["max_residual"].get<double>() < row["tolerance"].get<double>());
      CHECK(!row["paper_ref"].get<std::string>().empty());
    }
  CHECK(transfer > 0);
  CHECK(j.at("pass") == true);
  CHECK(qnls_run({"verify", "--suite", "nonsense"}).code == 1);
  CHECK(qnls_run({"verify", "--n", "0"}).code == 1);
}

TEST_CASE("report: summary and failing identities") {
  const auto path = temp_file("verify.json");
  REQUIRE(qnls_run({"verify", "--suite", "QNLS-eigen", "--points", "4", "--out", path.string()}).code == 0);
  const auto ok = qnls_run({"report", path.string()});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("QNLS-eigen") != std::string::npos);
  CHECK(ok.out.find("overall: PASS") != std::string::npos);

  std::ifstream f(path);
  auto j = json::parse(f);
  f.close();
  auto& row = j["suites"][0]["identities"][0];
  row["pass"] = false;
  const std::string id = row["identity_id"];
  write_file(path, j.dump());
  const auto bad = qnls_run({"report", path.string()});
  CHECK(bad.code == 3);
  CHECK(bad.out.find(id) != std::string::npos);
  CHECK(bad.out.find("overall: FAIL") != std::string::npos);

  write_file(path, "[1, 2]");
  CHECK(qnls_run({"report", path.string()}).code == 1);
  CHECK(qnls_run({"report"}).code == 1);
}

TEST_CASE("a sign flip of the coupling in one route is caught by the route comparison") {
  // mutation fixture: the explicit sum built with -gamma, compared with the
  // symmetrized pre-wavefunction at +gamma, as the route suite does
  auto g = rng(11);
  for (int n = 2; n <= 3; ++n) {
    const auto r = make_rapidities(random_rapidities(g, n), 0.8, 5.0);
    auto flipped = r;
    flipped.gamma = -r.gamma;
    const auto reference = bethe_wavefunction(r, BetheRoute::symmetrize);
    const auto good = bethe_wavefunction(r, BetheRoute::explicit_sum);
    const auto bad = bethe_wavefunction(flipped, BetheRoute::explicit_sum);
    double good_res = 0.0, bad_res = 0.0;
    for (const auto& x : sample_regular_points(n, 5.0, 20, g)) {
      good_res = std::max(good_res, rel(good(x), reference(x)));
      bad_res = std::max(bad_res, rel(bad(x), reference(x)));
    }
    CHECK(good_res < 1e-9);
    CHECK(bad_res > 1e-3);
  }
}
