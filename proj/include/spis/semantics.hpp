#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "spis/isa.hpp"

namespace spis {

enum class Reply { True, False, Blocked };

// A one-bit register service, or the empty service that blocks everything.
struct Service {
    enum class Kind { BoolReg, Empty };

    Kind kind = Kind::BoolReg;
    bool content = false;

    static Service reg(bool b) { return {Kind::BoolReg, b}; }
    static Service empty() { return {Kind::Empty, false}; }
    bool is_empty() const { return kind == Kind::Empty; }

    friend bool operator==(const Service&, const Service&) = default;
};

// set:T -> (true register, True); set:F -> (false register, False);
// get -> (unchanged, content). The empty service absorbs every method.
std::pair<Service, Reply> service_step(const Service& s, Method m);

// Behaviour trees. Tau is the internal step produced when a service
// consumes an action; Pcc is binary postconditional composition.
struct ThreadNode;
using Thread = std::shared_ptr<const ThreadNode>;

struct ThreadNode {
    enum class Kind { Stop, Deadlock, Tau, Pcc };

    Kind kind;
    BasicInstruction action{}; // Pcc only
    Thread on_true;            // Pcc true branch; Tau successor
    Thread on_false;           // Pcc false branch
};

Thread thread_stop();
Thread thread_deadlock();
Thread thread_tau(Thread next);
Thread thread_pcc(BasicInstruction action, Thread on_true, Thread on_false);

bool thread_equal(const Thread& a, const Thread& b);

inline constexpr std::uint64_t kDefaultThreadBudget = 1ull << 20;

// The behaviour of iseq under execution, as an (internally shared) tree.
// budget bounds the unfolded node count of the result.
Thread extract_thread(const InstructionSequence& iseq,
                      std::uint64_t budget = kDefaultThreadBudget);

// Thread/service interaction at one focus: use keeps the residual thread,
// apply keeps the final service state.
Thread thread_use(const Thread& t, const Focus& f, const Service& s);
Service thread_apply(const Thread& t, const Focus& f, const Service& s);

struct RegisterFile {
    std::vector<bool> inputs;
    std::vector<bool> auxs;
    bool out = false;

    friend bool operator==(const RegisterFile&, const RegisterFile&) = default;
};

// Inaction is an ordinary value here, not an error.
struct Outcome {
    enum class Kind { Terminated, Inaction };

    Kind kind = Kind::Inaction;
    RegisterFile regs; // meaningful when terminated

    static Outcome terminated(RegisterFile r) { return {Kind::Terminated, std::move(r)}; }
    static Outcome inaction() { return {Kind::Inaction, {}}; }
    bool is_terminated() const { return kind == Kind::Terminated; }
};

// Program-counter interpreter. Auxiliary registers start false, out starts
// false. Reading an input register beyond the supplied arity blocks, which
// surfaces as inaction.
Outcome execute(const InstructionSequence& iseq, const std::vector<bool>& inputs);

// The same computation through thread extraction and use/apply. Only the
// output register of the result is meaningful for a terminated outcome.
Outcome compute_via_threads(const InstructionSequence& iseq, const std::vector<bool>& inputs,
                            std::uint64_t budget = kDefaultThreadBudget);

// Truth table with input position 1 varying slowest: row index r maps to
// inputs (bit n-1 of r, ..., bit 0 of r).
struct TruthTable {
    int arity = 0;
    std::vector<bool> outputs; // size 2^arity

    static TruthTable of_arity(int n) {
        return TruthTable{n, std::vector<bool>(std::size_t{1} << n, false)};
    }
    bool eval(const std::vector<bool>& inputs) const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

std::vector<bool> table_row_inputs(int arity, std::size_t row);

inline constexpr int kDefaultArityLimit = 20;

// All 2^n rows through execute; nullopt when some row reaches inaction.
std::optional<TruthTable> truth_table(const InstructionSequence& iseq, int arity,
                                      int arity_limit = kDefaultArityLimit);

bool computes(const InstructionSequence& iseq, const TruthTable& f);

} // namespace spis
