#pragma once

#include <stdexcept>
#include <string>

namespace schurnev {

// Every library failure derives from Error and carries a stable machine
// code (used verbatim in CLI error JSON and exit-code mapping).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SCHURNEV_DEFINE_ERROR(NAME, CODE)                        \
    class NAME : public Error {                                  \
    public:                                                      \
        explicit NAME(const std::string& message)                \
            : Error(CODE, message) {}                            \
    }

SCHURNEV_DEFINE_ERROR(InvalidPoint, "invalid_point");
SCHURNEV_DEFINE_ERROR(InvalidSequence, "invalid_sequence");
SCHURNEV_DEFINE_ERROR(InvalidFunction, "invalid_function");
SCHURNEV_DEFINE_ERROR(SingularityTooClose, "singularity_too_close");
SCHURNEV_DEFINE_ERROR(AtomTooClose, "atom_too_close");
SCHURNEV_DEFINE_ERROR(NodeCoincidesWithSingularity, "node_coincides_with_singularity");
SCHURNEV_DEFINE_ERROR(TerminatedRecursion, "terminated_recursion");
SCHURNEV_DEFINE_ERROR(DegenerateKernel, "degenerate_kernel");
SCHURNEV_DEFINE_ERROR(GridMismatch, "grid_mismatch");
SCHURNEV_DEFINE_ERROR(NotAnalytic, "not_analytic");
SCHURNEV_DEFINE_ERROR(SymbolSingularOnGrid, "symbol_singular_on_grid");
SCHURNEV_DEFINE_ERROR(IllConditioned, "ill_conditioned");
SCHURNEV_DEFINE_ERROR(SectionTooLarge, "section_too_large");
SCHURNEV_DEFINE_ERROR(CarlesonTooSmall, "carleson_too_small");
SCHURNEV_DEFINE_ERROR(SequencesNotDisjoint, "sequences_not_disjoint");
SCHURNEV_DEFINE_ERROR(ConfigError, "config_error");

#undef SCHURNEV_DEFINE_ERROR

} // namespace schurnev
