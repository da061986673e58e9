#include "spis/semantics.hpp"

#include <limits>
#include <unordered_map>

namespace spis {

std::pair<Service, Reply> service_step(const Service& s, Method m) {
    if (s.is_empty()) return {Service::empty(), Reply::Blocked};
    switch (m) {
    case Method::SetTrue:  return {Service::reg(true), Reply::True};
    case Method::SetFalse: return {Service::reg(false), Reply::False};
    case Method::Get:      return {s, s.content ? Reply::True : Reply::False};
    }
    return {Service::empty(), Reply::Blocked};
}

Thread thread_stop() {
    static const Thread t = std::make_shared<ThreadNode>(ThreadNode{ThreadNode::Kind::Stop, {}, nullptr, nullptr});
    return t;
}

Thread thread_deadlock() {
    static const Thread t = std::make_shared<ThreadNode>(ThreadNode{ThreadNode::Kind::Deadlock, {}, nullptr, nullptr});
    return t;
}

Thread thread_tau(Thread next) {
    return std::make_shared<ThreadNode>(
        ThreadNode{ThreadNode::Kind::Tau, {}, std::move(next), nullptr});
}

Thread thread_pcc(BasicInstruction action, Thread on_true, Thread on_false) {
    return std::make_shared<ThreadNode>(
        ThreadNode{ThreadNode::Kind::Pcc, action, std::move(on_true), std::move(on_false)});
}

bool thread_equal(const Thread& a, const Thread& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
    case ThreadNode::Kind::Stop:
    case ThreadNode::Kind::Deadlock: return true;
    case ThreadNode::Kind::Tau:      return thread_equal(a->on_true, b->on_true);
    case ThreadNode::Kind::Pcc:
        return a->action == b->action && thread_equal(a->on_true, b->on_true) &&
               thread_equal(a->on_false, b->on_false);
    }
    return false;
}

namespace {

constexpr std::uint64_t kSizeMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) return kSizeMax;
    return r;
}

// Extraction works suffix by suffix, sharing subtrees between positions.
// The unfolded tree can still be exponential, so sizes are tracked
// separately (saturating) and checked against the caller's budget.
struct Extractor {
    const InstructionSequence& iseq;
    std::vector<Thread> memo;               // per position, 1-based
    std::vector<std::uint64_t> memo_size;   // unfolded node count per position

    explicit Extractor(const InstructionSequence& s)
        : iseq(s), memo(s.size() + 2), memo_size(s.size() + 2, 0) {}

    std::size_t len() const { return iseq.size(); }

    std::pair<Thread, std::uint64_t> from(std::size_t j) {
        if (memo[j]) return {memo[j], memo_size[j]};
        auto [t, n] = build(j);
        memo[j] = t;
        memo_size[j] = n;
        return {t, n};
    }

    std::pair<Thread, std::uint64_t> build(std::size_t j) {
        const auto& u = iseq.at(j);
        switch (u.kind) {
        case PrimitiveInstruction::Kind::Plain: {
            if (j == len()) return {thread_pcc(u.basic, thread_deadlock(), thread_deadlock()), 3};
            auto [t, n] = from(j + 1);
            return {thread_pcc(u.basic, t, t), sat_add(1, sat_add(n, n))};
        }
        case PrimitiveInstruction::Kind::PosTest: {
            if (j == len()) return {thread_pcc(u.basic, thread_deadlock(), thread_deadlock()), 3};
            auto [t, n] = from(j + 1);
            auto [s, m] = jump(2, j + 1);
            return {thread_pcc(u.basic, t, s), sat_add(1, sat_add(n, m))};
        }
        case PrimitiveInstruction::Kind::NegTest: {
            if (j == len()) return {thread_pcc(u.basic, thread_deadlock(), thread_deadlock()), 3};
            auto [t, n] = from(j + 1);
            auto [s, m] = jump(2, j + 1);
            return {thread_pcc(u.basic, s, t), sat_add(1, sat_add(n, m))};
        }
        case PrimitiveInstruction::Kind::Jump:
            return jump(u.jump, j + 1);
        case PrimitiveInstruction::Kind::Halt:
            return {thread_stop(), 1};
        }
        return {thread_deadlock(), 1};
    }

    // #l with the remaining instructions starting at position p (p may be
    // one past the end, making the jump the final instruction).
    std::pair<Thread, std::uint64_t> jump(std::uint64_t l, std::size_t p) {
        for (;;) {
            if (p > len() || l == 0) return {thread_deadlock(), 1};
            if (l == 1) return from(p);
            if (p == len()) return {thread_deadlock(), 1};
            --l;
            ++p;
        }
    }
};

} // namespace

Thread extract_thread(const InstructionSequence& iseq, std::uint64_t budget) {
    Extractor ex(iseq);
    auto [t, n] = ex.from(1);
    if (n > budget)
        throw BudgetExceeded("thread extraction would produce " +
                             (n == kSizeMax ? std::string("more than 2^64") : std::to_string(n)) +
                             " nodes, budget " + std::to_string(budget));
    return t;
}

namespace {

struct UseKey {
    const ThreadNode* node;
    int state; // 0=false reg, 1=true reg, 2=empty

    bool operator==(const UseKey&) const = default;
};

struct UseKeyHash {
    std::size_t operator()(const UseKey& k) const {
        return std::hash<const void*>()(k.node) * 31u + static_cast<std::size_t>(k.state);
    }
};

int service_state(const Service& s) {
    return s.is_empty() ? 2 : (s.content ? 1 : 0);
}

struct UseEval {
    Focus focus;
    std::unordered_map<UseKey, Thread, UseKeyHash> memo;

    Thread run(const Thread& t, const Service& s) {
        UseKey key{t.get(), service_state(s)};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Thread result = eval(t, s);
        memo.emplace(key, result);
        return result;
    }

    Thread eval(const Thread& t, const Service& s) {
        switch (t->kind) {
        case ThreadNode::Kind::Stop:     return thread_stop();     // U1
        case ThreadNode::Kind::Deadlock: return thread_deadlock(); // U2
        case ThreadNode::Kind::Tau:      return thread_tau(run(t->on_true, s)); // U3
        case ThreadNode::Kind::Pcc: {
            if (t->action.focus != focus) // U4
                return thread_pcc(t->action, run(t->on_true, s), run(t->on_false, s));
            auto [next, reply] = service_step(s, t->action.method);
            switch (reply) {
            case Reply::True:    return thread_tau(run(t->on_true, next));  // U5
            case Reply::False:   return thread_tau(run(t->on_false, next)); // U6
            case Reply::Blocked: return thread_tau(thread_deadlock());      // U7
            }
        }
        }
        return thread_deadlock();
    }
};

struct ApplyEval {
    Focus focus;
    std::unordered_map<UseKey, Service, UseKeyHash> memo;

    Service run(const Thread& t, const Service& s) {
        UseKey key{t.get(), service_state(s)};
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        Service result = eval(t, s);
        memo.emplace(key, result);
        return result;
    }

    Service eval(const Thread& t, const Service& s) {
        switch (t->kind) {
        case ThreadNode::Kind::Stop:     return s;                // A1
        case ThreadNode::Kind::Deadlock: return Service::empty(); // A2
        case ThreadNode::Kind::Tau:      return run(t->on_true, s); // A3
        case ThreadNode::Kind::Pcc: {
            if (t->action.focus != focus) return Service::empty(); // A4
            auto [next, reply] = service_step(s, t->action.method);
            switch (reply) {
            case Reply::True:    return run(t->on_true, next);  // A5
            case Reply::False:   return run(t->on_false, next); // A6
            case Reply::Blocked: return Service::empty();       // A7
            }
        }
        }
        return Service::empty();
    }
};

} // namespace

Thread thread_use(const Thread& t, const Focus& f, const Service& s) {
    UseEval ev{f, {}};
    return ev.run(t, s);
}

Service thread_apply(const Thread& t, const Focus& f, const Service& s) {
    ApplyEval ev{f, {}};
    return ev.run(t, s);
}

Outcome execute(const InstructionSequence& iseq, const std::vector<bool>& inputs) {
    RegisterFile regs;
    regs.inputs = inputs;
    regs.auxs.assign(static_cast<std::size_t>(classify(iseq).max_aux), false);
    regs.out = false;

    const std::size_t k = iseq.size();
    std::size_t pc = 1;
    // Forward jumps only, so the number of steps is bounded by the length.
    while (pc <= k) {
        const auto& u = iseq.at(pc);
        switch (u.kind) {
        case PrimitiveInstruction::Kind::Halt:
            return Outcome::terminated(std::move(regs));
        case PrimitiveInstruction::Kind::Jump:
            if (u.jump == 0) return Outcome::inaction();
            pc += u.jump;
            continue;
        default: break;
        }
        Reply reply = Reply::Blocked;
        const auto& b = u.basic;
        switch (b.focus.kind) {
        case Focus::Kind::Input:
            if (static_cast<std::size_t>(b.focus.index) > regs.inputs.size())
                return Outcome::inaction(); // unconnected register blocks
            reply = regs.inputs[static_cast<std::size_t>(b.focus.index) - 1] ? Reply::True
                                                                             : Reply::False;
            break;
        case Focus::Kind::Aux: {
            const std::size_t idx = static_cast<std::size_t>(b.focus.index) - 1;
            switch (b.method) {
            case Method::SetTrue:  regs.auxs[idx] = true;  reply = Reply::True;  break;
            case Method::SetFalse: regs.auxs[idx] = false; reply = Reply::False; break;
            case Method::Get: reply = regs.auxs[idx] ? Reply::True : Reply::False; break;
            }
            break;
        }
        case Focus::Kind::Out:
            regs.out = (b.method == Method::SetTrue);
            reply = regs.out ? Reply::True : Reply::False;
            break;
        }
        switch (u.kind) {
        case PrimitiveInstruction::Kind::Plain:
            pc += 1;
            break;
        case PrimitiveInstruction::Kind::PosTest:
            pc += (reply == Reply::True) ? 1 : 2;
            break;
        case PrimitiveInstruction::Kind::NegTest:
            pc += (reply == Reply::False) ? 1 : 2;
            break;
        default: break;
        }
    }
    return Outcome::inaction(); // ran past the end
}

Outcome compute_via_threads(const InstructionSequence& iseq, const std::vector<bool>& inputs,
                            std::uint64_t budget) {
    Thread t = extract_thread(iseq, budget);
    const int max_aux = classify(iseq).max_aux;
    for (int j = 1; j <= max_aux; ++j)
        t = thread_use(t, Focus::aux(j), Service::reg(false));
    for (std::size_t i = 0; i < inputs.size(); ++i)
        t = thread_use(t, Focus::input(static_cast<int>(i) + 1), Service::reg(inputs[i]));
    Service result = thread_apply(t, Focus::out(), Service::reg(false));
    if (result.is_empty()) return Outcome::inaction();
    RegisterFile regs;
    regs.inputs = inputs;
    regs.out = result.content;
    return Outcome::terminated(std::move(regs));
}

std::vector<bool> table_row_inputs(int arity, std::size_t row) {
    std::vector<bool> inputs(static_cast<std::size_t>(arity));
    for (int i = 1; i <= arity; ++i)
        inputs[static_cast<std::size_t>(i) - 1] = (row >> (arity - i)) & 1u;
    return inputs;
}

bool TruthTable::eval(const std::vector<bool>& inputs) const {
    std::size_t row = 0;
    for (int i = 1; i <= arity; ++i)
        row |= static_cast<std::size_t>(inputs[static_cast<std::size_t>(i) - 1] ? 1 : 0)
               << (arity - i);
    return outputs[row];
}

std::optional<TruthTable> truth_table(const InstructionSequence& iseq, int arity,
                                      int arity_limit) {
    if (arity < 0 || arity > arity_limit)
        throw ArityTooLarge("arity " + std::to_string(arity) + " above limit " +
                            std::to_string(arity_limit));
    TruthTable table = TruthTable::of_arity(arity);
    const std::size_t rows = std::size_t{1} << arity;
    for (std::size_t r = 0; r < rows; ++r) {
        Outcome o = execute(iseq, table_row_inputs(arity, r));
        if (!o.is_terminated()) return std::nullopt;
        table.outputs[r] = o.regs.out;
    }
    return table;
}

bool computes(const InstructionSequence& iseq, const TruthTable& f) {
    auto t = truth_table(iseq, f.arity);
    return t.has_value() && *t == f;
}

} // namespace spis
