// =============================================================================
// io.hpp
//
// File formats:
//   - canonical grid:   "M N" line, then M rows of N rationals (num/den or
//     bare integers)
//   - canonical matrix: "dim" line, then dim rows of dim rationals
//   - ingest-only nested-brace lists {{r,...},{...}} (Wolfram-style data
//     files); an optional "name =" prefix and trailing ";" are tolerated,
//     floating literals are rejected
//   - certificate manifest: "key = value" lines
// plus the plain-text report log ("key = value" per line; rationals carry a
// non-normative decimal companion line).
// =============================================================================
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "wavecert/certify.hpp"

namespace wavecert::io {

struct ParseError : std::runtime_error {
  std::filesystem::path path;
  long line;
  ParseError(std::filesystem::path p, long ln, const std::string& what);
};

// --- canonical formats ------------------------------------------------------

CoeffGrid read_grid(const std::filesystem::path& path);
void write_grid(const std::filesystem::path& path, const CoeffGrid& g);

RationalMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const RationalMatrix& m);

// --- nested-brace ingest ------------------------------------------------------

RationalMatrix ingest_nested_list(const std::filesystem::path& path);
CoeffGrid ingest_nested_grid(const std::filesystem::path& path);
// Source layout stores the matrix in row-action convention (row J lists the
// image of P_J); transposed here to the library's column action.
AcalMatrix ingest_nested_acal(const std::filesystem::path& path);

// Auto-detect: leading '{' (after an optional name prefix) means nested form.
CoeffGrid read_grid_auto(const std::filesystem::path& path);
AcalMatrix read_acal_auto(const std::filesystem::path& path);

// --- manifest -------------------------------------------------------------------

struct Manifest {
  Frequency freq;
  CoeffGrid u0;
  AcalMatrix acal;
  NormWeights weights;
  std::optional<long> mu;
  std::optional<long> mtilde;
  std::optional<Rational> k0;
  std::optional<Rational> delta;
  std::optional<Rational> epsilon;  // pre-verified radius, used by `distinct`
  std::string label;
};

// Keys: omega (required, "num/den"), u0 (required, path), acal (required,
// path), mu, mtilde, k0, delta, epsilon, rho_tau, rho_x, label. Paths are
// resolved relative to the manifest's directory.
Manifest read_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path, const Certificate& cert,
                    const std::filesystem::path& u0_path,
                    const std::filesystem::path& acal_path,
                    const std::optional<Rational>& epsilon);

// Assemble a runnable certificate; absent mu comes from the Acal dimension,
// absent Mtilde from the minimal tail rule, absent (k0, delta) are the
// caller's business (verify-with-suggestion).
Certificate manifest_to_certificate(const Manifest& man, const Rational& k0,
                                    const Rational& delta, const std::string& label);

// --- report log --------------------------------------------------------------------

class ReportLog {
 public:
  explicit ReportLog(std::ostream& sink) : sink_(sink) {}
  void section(const std::string& title);
  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, long value);
  void kv(const std::string& key, bool value);
  // exact rational plus a "<key>_decimal" companion (non-normative)
  void kv(const std::string& key, const Rational& value, int significant = 12);

 private:
  std::ostream& sink_;
};

void log_report(ReportLog& log, const BoundReport& r);
void log_outcome(ReportLog& log, const VerificationOutcome& o, const Rational& k0,
                 const Rational& delta);

}  // namespace wavecert::io
