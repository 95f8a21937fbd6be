#pragma once

#include "tslice/rational.hpp"

#include <string>

namespace tslice {

enum class ModelKind { Sho, SingleSpin, Dimer };

/// Which system, with its slice count L. Energies in units of the coupling (k_B = 1);
/// for the oscillator hbar*omega = 1 and L counts Matsubara frequencies.
struct ModelSpec {
    ModelKind kind = ModelKind::Sho;
    unsigned L = 1;
    Rational s = Rational(1, 2); // SingleSpin only
    Rational J = 1;              // SingleSpin, Dimer
    Rational Jprime = 0;         // Dimer only
};

ModelSpec sho_model(unsigned L);
ModelSpec single_spin_model(const Rational& s, const Rational& J, unsigned L);
ModelSpec dimer_model(const Rational& J, const Rational& Jprime, unsigned L);

/// Throws std::invalid_argument when the model parameters are out of range
/// (L >= 1; L odd for the oscillator; 2s a positive integer).
void validate(const ModelSpec& model);

/// True when 2s is a positive integer.
bool is_valid_spin(const Rational& s);

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

} // namespace tslice
