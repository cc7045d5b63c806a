#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "test_support.hpp"
#include "wavecert/io.hpp"

using namespace wavecert;
namespace fs = std::filesystem;
using testing::random_grid;
using testing::Rng;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("wavecert_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(dir, ec); }
  fs::path file(const std::string& name) const { return dir / name; }
};

void put(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("canonical grid round trip") {
  TempDir tmp;
  Rng rng(51);
  const CoeffGrid g = random_grid(rng, 3, 4);
  io::write_grid(tmp.file("g.txt"), g);
  const CoeffGrid back = io::read_grid(tmp.file("g.txt"));
  CHECK(testing::grids_equal(g, back));
}

TEST_CASE("canonical matrix round trip") {
  TempDir tmp;
  Rng rng(52);
  RationalMatrix m(3, 3);
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) m(i, j) = testing::random_rational(rng);
  io::write_matrix(tmp.file("m.txt"), m);
  const RationalMatrix back = io::read_matrix(tmp.file("m.txt"));
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) CHECK(m(i, j) == back(i, j));
}

TEST_CASE("nested-brace ingest") {
  TempDir tmp;
  put(tmp.file("u.m"), "{{1/2,-1/3},{0,2}}");
  const CoeffGrid g = io::ingest_nested_grid(tmp.file("u.m"));
  REQUIRE(g.modes_m() == 2);
  REQUIRE(g.modes_n() == 2);
  CHECK(g.c(0, 0) == Rational(1, 2));
  CHECK(g.c(0, 1) == Rational(-1, 3));
  CHECK(g.c(1, 0) == Rational(0));
  CHECK(g.c(1, 1) == Rational(2));

  put(tmp.file("one.m"), "{{1}}");
  const CoeffGrid one = io::ingest_nested_grid(tmp.file("one.m"));
  CHECK(one.modes_m() == 1);
  CHECK(one.c(0, 0) == Rational(1));

  // Wolfram-style assignment with whitespace and newlines
  put(tmp.file("named.m"), "u0hat = {\n  {1/2, -1/3},\n  {0, 2}\n};\n");
  const CoeffGrid named = io::ingest_nested_grid(tmp.file("named.m"));
  CHECK(named.c(0, 1) == Rational(-1, 3));
}

TEST_CASE("nested-brace ingest rejects floats and ragged rows") {
  TempDir tmp;
  put(tmp.file("f.m"), "{{0.5, 1},{2, 3}}");
  CHECK_THROWS_AS(io::ingest_nested_grid(tmp.file("f.m")), io::ParseError);
  put(tmp.file("r.m"), "{{1, 2},{3}}");
  CHECK_THROWS_AS(io::ingest_nested_grid(tmp.file("r.m")), io::ParseError);
  put(tmp.file("b.m"), "{{1, 2},{3, 4}");
  CHECK_THROWS_AS(io::ingest_nested_grid(tmp.file("b.m")), io::ParseError);
  // parse errors carry the line number
  put(tmp.file("l.m"), "{{1, 2},\n{3, 0.25}}");
  try {
    io::ingest_nested_grid(tmp.file("l.m"));
    CHECK(false);
  } catch (const io::ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("nested Acal ingest transposes to column action") {
  TempDir tmp;
  put(tmp.file("a.m"), "{{1, 2},{3, 4}}");
  // source row J = image of P_J; column action wants (J,K) = coeff of P_J in A P_K
  const AcalMatrix a = io::ingest_nested_acal(tmp.file("a.m"));
  CHECK(a.m(0, 0) == Rational(1));
  CHECK(a.m(1, 0) == Rational(2));
  CHECK(a.m(0, 1) == Rational(3));
  CHECK(a.m(1, 1) == Rational(4));
  put(tmp.file("ns.m"), "{{1, 2, 3},{4, 5, 6}}");
  CHECK_THROWS_AS(io::ingest_nested_acal(tmp.file("ns.m")), io::ParseError);
}

TEST_CASE("grid parse errors carry file and line") {
  TempDir tmp;
  put(tmp.file("bad.txt"), "2 2\n1/2 3\n4 x\n");
  try {
    io::read_grid(tmp.file("bad.txt"));
    CHECK(false);
  } catch (const io::ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
  put(tmp.file("short.txt"), "2 2\n1 2 3\n");
  CHECK_THROWS_AS(io::read_grid(tmp.file("short.txt")), io::ParseError);
}

TEST_CASE("manifest round trip through a certificate") {
  TempDir tmp;
  Rng rng(53);
  // build a small but real certificate around the zero solution
  TruncationSpec t;
  t.M = t.N = 1;
  t.mu = t.nu = 1;
  t.Mtilde = t.Ntilde = 1;
  Certificate cert{Frequency(34, 20), CoeffGrid::zeros(1, 1), AcalMatrix::identity(1),
                   t, NormWeights::defaults(), Rational(1, 2), Rational(1, 10), "zero"};
  io::write_grid(tmp.file("u0.txt"), cert.u0);
  io::write_matrix(tmp.file("acal.txt"), cert.acal.m);
  io::write_manifest(tmp.file("cert.manifest"), cert, "u0.txt", "acal.txt", Rational(1, 10));

  const io::Manifest man = io::read_manifest(tmp.file("cert.manifest"));
  CHECK(man.freq.p == 34);
  CHECK(man.freq.q == 20);
  CHECK(man.u0.modes_m() == 1);
  CHECK(man.acal.dim() == 1);
  REQUIRE(man.k0.has_value());
  CHECK(*man.k0 == Rational(1, 2));
  REQUIRE(man.delta.has_value());
  CHECK(*man.delta == Rational(1, 10));
  REQUIRE(man.epsilon.has_value());
  CHECK(man.label == "zero");
  CHECK(man.weights.rho_tau == NormWeights::defaults().rho_tau);

  const Certificate back = io::manifest_to_certificate(man, *man.k0, *man.delta, "");
  CHECK(back.trunc.mu == 1);
  CHECK(back.label == "zero");
}

TEST_CASE("manifest errors") {
  TempDir tmp;
  put(tmp.file("m1"), "omega = 69/40\n");
  CHECK_THROWS_AS(io::read_manifest(tmp.file("m1")), io::ParseError);  // missing u0
  put(tmp.file("m2"), "omega = 3/2\nu0 = u.txt\nacal = a.txt\n");
  CHECK_THROWS_AS(io::read_manifest(tmp.file("m2")),
                  std::invalid_argument);  // 3/2 is (2p+1)/(2q)? 3 odd, 2 even, p=1=q -> invalid
  put(tmp.file("m3"), "omega = 69/40\nomega = 69/40\nu0 = u.txt\nacal = a.txt\n");
  CHECK_THROWS_AS(io::read_manifest(tmp.file("m3")), io::ParseError);  // duplicate key
}

TEST_CASE("frequency text validation") {
  CHECK(Frequency::from_rational_text("69/40").p == 34);
  CHECK(Frequency::from_rational_text("69/40").q == 20);
  CHECK(Frequency::from_rational_text("5/2").p == 2);
  CHECK_THROWS_AS(Frequency::from_rational_text("7/3"), std::invalid_argument);   // odd den
  CHECK_THROWS_AS(Frequency::from_rational_text("4/2"), std::invalid_argument);   // 2 = even/... reduces
  CHECK_THROWS_AS(Frequency::from_rational_text("1/2"), std::invalid_argument);   // below 1
  CHECK_THROWS_AS(Frequency::from_rational_text("0.5"), std::invalid_argument);
}

TEST_CASE("report log format") {
  std::ostringstream ss;
  io::ReportLog log(ss);
  log.kv("norm_u0", Rational(9, 4));
  log.kv("mu", 11L);
  log.kv("accepted", true);
  const std::string text = ss.str();
  CHECK(text.find("norm_u0 = 9/4\n") != std::string::npos);
  CHECK(text.find("norm_u0_decimal = 2.25") != std::string::npos);
  CHECK(text.find("non-normative") != std::string::npos);
  CHECK(text.find("mu = 11\n") != std::string::npos);
  CHECK(text.find("accepted = true\n") != std::string::npos);
}
