#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "spis/errors.hpp"

namespace spis {

// Register names. Input registers are read-only, the output register is
// write-only, auxiliary registers allow both directions.
struct Focus {
    enum class Kind { Input, Aux, Out };

    Kind kind = Kind::Out;
    int index = 0; // >= 1 for Input/Aux, unused for Out

    static Focus input(int i) { return {Kind::Input, i}; }
    static Focus aux(int i) { return {Kind::Aux, i}; }
    static Focus out() { return {Kind::Out, 0}; }

    friend auto operator<=>(const Focus&, const Focus&) = default;
};

enum class Method { SetTrue, SetFalse, Get };

struct BasicInstruction {
    Focus focus;
    Method method = Method::Get;

    friend auto operator<=>(const BasicInstruction&, const BasicInstruction&) = default;
};

// Input registers only support get, the output register only set.
bool is_legal_basic(const BasicInstruction& b);

struct PrimitiveInstruction {
    enum class Kind { Plain, PosTest, NegTest, Jump, Halt };

    Kind kind = Kind::Halt;
    BasicInstruction basic{};   // valid for Plain/PosTest/NegTest
    std::uint32_t jump = 0;     // valid for Jump; 0 allowed (guaranteed inaction)

    static PrimitiveInstruction plain(BasicInstruction b) { return {Kind::Plain, b, 0}; }
    static PrimitiveInstruction pos_test(BasicInstruction b) { return {Kind::PosTest, b, 0}; }
    static PrimitiveInstruction neg_test(BasicInstruction b) { return {Kind::NegTest, b, 0}; }
    static PrimitiveInstruction jump_to(std::uint32_t l) { return {Kind::Jump, {}, l}; }
    static PrimitiveInstruction halt() { return {Kind::Halt, {}, 0}; }

    bool has_basic() const {
        return kind == Kind::Plain || kind == Kind::PosTest || kind == Kind::NegTest;
    }

    friend bool operator==(const PrimitiveInstruction& a, const PrimitiveInstruction& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Kind::Plain:
        case Kind::PosTest:
        case Kind::NegTest: return a.basic == b.basic;
        case Kind::Jump:    return a.jump == b.jump;
        case Kind::Halt:    return true;
        }
        return false;
    }
};

// A finite single-pass instruction sequence. Always non-empty.
struct InstructionSequence {
    std::vector<PrimitiveInstruction> instrs;

    InstructionSequence() = default;
    explicit InstructionSequence(std::vector<PrimitiveInstruction> is);

    std::size_t size() const { return instrs.size(); }
    const PrimitiveInstruction& at(std::size_t pos1) const { return instrs[pos1 - 1]; }

    friend bool operator==(const InstructionSequence&, const InstructionSequence&) = default;
};

struct Classification {
    int in_arity = 0;  // highest input index read (0 if none)
    int max_aux = 0;   // highest auxiliary index used
    int max_jump = 0;  // longest jump length (0 if no jumps)

    friend bool operator==(const Classification&, const Classification&) = default;
};

// Text format: instructions joined by ";", e.g.
//   +in:1.get ; #2 ; -aux:2.get ; out.set:F ; !
InstructionSequence parse(std::string_view text);
std::string render(const InstructionSequence& iseq);
std::string render(const PrimitiveInstruction& instr);

std::size_t psize(const InstructionSequence& iseq);
Classification classify(const InstructionSequence& iseq);

// Concatenation in the program-algebra sense.
InstructionSequence concat(const InstructionSequence& a, const InstructionSequence& b);

} // namespace spis
