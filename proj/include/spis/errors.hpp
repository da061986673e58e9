#pragma once

#include <stdexcept>
#include <string>

namespace spis {

// Domain errors. Everything derives from Error so callers can catch the
// whole family at the CLI boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SPIS_DEFINE_ERROR(name)                                          \
    class name : public Error {                                          \
    public:                                                              \
        explicit name(const std::string& what) : Error(what) {}          \
    }

SPIS_DEFINE_ERROR(SyntaxError);        // malformed instruction-sequence text
SPIS_DEFINE_ERROR(IllegalInstruction); // basic instruction outside the register set
SPIS_DEFINE_ERROR(BudgetExceeded);     // thread extraction / enumeration too large
SPIS_DEFINE_ERROR(ArityTooLarge);      // truth-table request above the desk-scale cap
SPIS_DEFINE_ERROR(UnboundVariable);    // formula evaluated with too few inputs
SPIS_DEFINE_ERROR(CyclicCircuit);      // circuit has no topological order
SPIS_DEFINE_ERROR(EmptyClause);        // CNF clause with no literals
SPIS_DEFINE_ERROR(UnmappedInput);      // retarget map misses an input the sequence reads
SPIS_DEFINE_ERROR(IllegalTarget);      // retarget map points a read at the output register
SPIS_DEFINE_ERROR(ClauseTooWide);      // clause with more than three distinct literals
SPIS_DEFINE_ERROR(InstanceTooLarge);   // SAT-instance bit vector above the desk-scale cap
SPIS_DEFINE_ERROR(HasSetFalse);        // sequence still writes False to the output register
SPIS_DEFINE_ERROR(NotNormalized);      // reduction input fails the normal-form checks
SPIS_DEFINE_ERROR(MissingTarget);      // sequence never writes True to the output register
SPIS_DEFINE_ERROR(ArityMismatch);      // reduction witnesses with incompatible arities
SPIS_DEFINE_ERROR(Malformed);          // bit string outside a codec's range
SPIS_DEFINE_ERROR(TargetTooSmall);     // padding target shorter than the encoding

#undef SPIS_DEFINE_ERROR

} // namespace spis
