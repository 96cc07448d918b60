#pragma once

// Interpretation of localized ELL_pol proofs as projects, and the soundness
// harness built on it.

#include <map>
#include <string>
#include <vector>

#include "goi/project.hpp"
#include "goi/proof.hpp"

namespace goi {

struct InterpretOptions {
  Quantifier m;
  Fuel fuel;
};

/// The project interpreting a proof that checks. Throws ProofError when the
/// proof does not check, ResourceError when execution runs out of fuel.
Project interpret(const Proof& p, const InterpretOptions& opt = {});

/// Finite stand-in for an interpretation basis: every variable name gets a
/// list of generators on the carrier [0,1). Names without an entry use the
/// standard generators.
struct Basis {
  std::map<uint32_t, std::vector<Project>> generators;

  /// Two wager-free generators: digit 1 flipped with weight 1/2, digit 2
  /// flipped with weight 1/3.
  static std::vector<Project> standard_generators();
  const std::vector<Project>& of(uint32_t name) const;
};

/// Flips digit `digit` on every unit interval of V, with the given weight.
Project flip_project(const std::vector<int64_t>& units, uint64_t digit = 1, const Rational& weight = 1);
/// Flip of digit 1 with weight 1: strictly successful on every carrier.
Project strict_opponent(const std::vector<int64_t>& units);

struct NamedTest {
  std::string name;
  Project test;
};

/// Tests on the location of a sequent: tensors of relocated basis
/// generators, a weighted fax family and a daemon.
std::vector<NamedTest> test_battery(const Sequent& s, const Basis& basis = {});

struct PairingRecord {
  std::string test;
  std::string value;  // exact rational, "inf", or the resource error message
  bool error = false;
};

struct SoundnessReport {
  bool checked = false;
  std::vector<Diagnostic> diagnostics;
  std::string conclusion;
  std::string error;  // interpretation failure
  Success success = Success::No;
  bool uses_with = false;
  std::vector<std::string> reasons;  // why the project is not strictly successful
  std::vector<PairingRecord> pairings;

  /// Checked, interpreted and successful: strictly, or weakly when the proof
  /// uses the & rule (flagged).
  bool ok() const;
};

SoundnessReport verify_soundness(const Proof& p, const Basis& basis = {}, const InterpretOptions& opt = {});

}  // namespace goi
