#include "tslice/model.hpp"

#include <stdexcept>

namespace tslice {

ModelSpec sho_model(unsigned L)
{
    ModelSpec m{ModelKind::Sho, L};
    validate(m);
    return m;
}

ModelSpec single_spin_model(const Rational& s, const Rational& J, unsigned L)
{
    ModelSpec m{ModelKind::SingleSpin, L, s, J, 0};
    validate(m);
    return m;
}

ModelSpec dimer_model(const Rational& J, const Rational& Jprime, unsigned L)
{
    ModelSpec m{ModelKind::Dimer, L, Rational(1, 2), J, Jprime};
    validate(m);
    return m;
}

bool is_valid_spin(const Rational& s)
{
    Rational twice = 2 * s;
    return twice > 0 && twice.get_den() == 1;
}

void validate(const ModelSpec& model)
{
    if (model.L < 1) throw std::invalid_argument("slice count L must be >= 1");
    switch (model.kind) {
    case ModelKind::Sho:
        if (model.L % 2 == 0) throw std::invalid_argument("oscillator L counts Matsubara frequencies and must be odd");
        break;
    case ModelKind::SingleSpin:
        if (!is_valid_spin(model.s)) throw std::invalid_argument("spin s must be a positive half-integer");
        break;
    case ModelKind::Dimer:
        if (model.s != Rational(1, 2)) throw std::invalid_argument("dimer is defined for spin 1/2 only");
        break;
    }
}

std::string to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Sho: return "sho";
    case ModelKind::SingleSpin: return "spin";
    case ModelKind::Dimer: return "dimer";
    }
    return "unknown";
}

ModelKind parse_model_kind(const std::string& name)
{
    if (name == "sho") return ModelKind::Sho;
    if (name == "spin") return ModelKind::SingleSpin;
    if (name == "dimer") return ModelKind::Dimer;
    throw std::invalid_argument("unknown model '" + name + "' (expected sho, spin or dimer)");
}

} // namespace tslice
