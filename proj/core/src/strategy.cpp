#include "adhesion/strategy.hpp"

#include "adhesion/errors.hpp"

namespace adhesion {

std::string to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::ConstantSlip: return "constant";
    case StrategyKind::PerturbObserve: return "po";
    case StrategyKind::SteepestGradient: return "sg";
    case StrategyKind::Flc: return "flc";
    case StrategyKind::Pso: return "pso";
    }
    return "?";
}

StrategyKind strategy_from_string(const std::string& name) {
    if (name == "constant") return StrategyKind::ConstantSlip;
    if (name == "po") return StrategyKind::PerturbObserve;
    if (name == "sg") return StrategyKind::SteepestGradient;
    if (name == "flc") return StrategyKind::Flc;
    if (name == "pso") return StrategyKind::Pso;
    throw ValidationError("unknown strategy '" + name + "' (expected constant|po|sg|flc|pso)");
}

} // namespace adhesion
