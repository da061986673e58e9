#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spis/reduction.hpp"
#include "spis/satc.hpp"
#include "spis/synthesis.hpp"
#include "spis/textio.hpp"

namespace {

using namespace spis;

InstructionSequence load_iseq(const std::string& path) {
    return parse(read_file(path));
}

int cmd_compile(const std::string& kind, const std::string& path) {
    InstructionSequence out = [&] {
        std::string text = read_file(path);
        if (kind == "table") return inseq_from_table(parse_truth_table(text));
        if (kind == "cnf") return inseqcnf(parse_dimacs(text));
        if (kind == "formula") return inseqf(parse_formula(text));
        return inseqc(parse_circuit(text));
    }();
    std::cout << render(out) << '\n';
    return 0;
}

int cmd_run(const std::string& path, const std::string& bits) {
    Outcome o = execute(load_iseq(path), parse_bits(bits));
    if (!o.is_terminated()) {
        std::cout << "inaction\n";
        return 1;
    }
    std::cout << "out=" << (o.regs.out ? '1' : '0') << '\n';
    return 0;
}

int cmd_table(const std::string& path, int arity) {
    auto t = truth_table(load_iseq(path), arity);
    if (!t) {
        std::cout << "no " << arity << "-ary function (inaction on some input)\n";
        return 1;
    }
    std::cout << render_truth_table(*t);
    return 0;
}

int cmd_transform(const std::string& kind, const std::string& path) {
    InstructionSequence x = load_iseq(path);
    InstructionSequence y = kind == "eliminate-set-false" ? eliminate_set_false(x)
                                                          : normalize_for_reduction(x);
    std::cout << render(y) << '\n';
    return 0;
}

int cmd_reduce(const std::string& path, const std::string& fixed_bits, int m,
               const std::string& map_path) {
    InstructionSequence x = load_iseq(path);
    Bits fixed = parse_bits(fixed_bits);
    ReachabilityFormula phi = build_reachability_formula(x, fixed, m);
    std::cout << render_bits(encode_cnf(to_3cnf(phi.formula))) << '\n';
    if (!map_path.empty()) {
        std::string map;
        map += "n " + std::to_string(phi.num_fixed) + "\n";
        map += "m " + std::to_string(phi.num_certificates) + "\n";
        map += "k " + std::to_string(phi.num_positions) + "\n";
        map += "target " + std::to_string(phi.target) + "\n";
        for (int i = 1; i <= phi.num_fixed + phi.num_certificates; ++i)
            map += "r" + std::to_string(i) + " " + std::to_string(phi.reg_var(i)) + "\n";
        for (int j = 1; j <= phi.num_positions; ++j)
            map += "v" + std::to_string(j) + " " + std::to_string(phi.pos_var(j)) + "\n";
        write_file(map_path, map);
    }
    return 0;
}

int cmd_satc(const std::string& path) {
    std::cout << (satc_eval(parse_bits(read_file(path))) ? "1" : "0") << '\n';
    return 0;
}

int cmd_check(const std::string& path) {
    InstructionSequence x = load_iseq(path);
    Classification c = classify(x);
    std::cout << "in_arity=" << c.in_arity << " max_aux=" << c.max_aux
              << " max_jump=" << c.max_jump << " psize=" << psize(x) << '\n';
    return 0;
}

int cmd_rank(const std::string& set_text) {
    std::cout << alpha_rank(parse_literal_set(set_text)) << '\n';
    return 0;
}

int cmd_unrank(std::uint64_t index) {
    std::cout << render_literal_set(alpha_unrank(index)) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-pass instruction sequences over Boolean registers"};
    app.require_subcommand(1);

    std::string kind, path, bits, map_path, set_text;
    int arity = 0, m = 0;
    std::uint64_t index = 1;

    auto* compile = app.add_subcommand("compile", "compile a source into a sequence");
    compile->add_option("kind", kind)->required()
        ->check(CLI::IsMember({"table", "cnf", "formula", "circuit"}));
    compile->add_option("input", path)->required();

    auto* run = app.add_subcommand("run", "execute a sequence on given input bits");
    run->add_option("program", path)->required();
    run->add_option("--input", bits)->default_val("");

    auto* table = app.add_subcommand("table", "truth table of a sequence");
    table->add_option("program", path)->required();
    table->add_option("arity", arity)->required();

    auto* transform = app.add_subcommand("transform", "rewrite a sequence");
    transform->add_option("kind", kind)->required()
        ->check(CLI::IsMember({"eliminate-set-false", "normalize"}));
    transform->add_option("program", path)->required();

    auto* reduce = app.add_subcommand("reduce", "reduce reachability to an instance");
    reduce->add_option("program", path)->required();
    reduce->add_option("--fixed", bits)->default_val("");
    reduce->add_option("--m", m)->required();
    reduce->add_option("--map", map_path);

    auto* satc = app.add_subcommand("satc", "evaluate an encoded instance");
    satc->add_option("instance", path)->required();

    auto* check = app.add_subcommand("check", "classify a sequence");
    check->add_option("program", path)->required();

    auto* rank = app.add_subcommand("rank", "position of a literal set");
    rank->add_option("set", set_text)->required();

    auto* unrank = app.add_subcommand("unrank", "literal set at a position");
    unrank->add_option("index", index)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (compile->parsed()) return cmd_compile(kind, path);
        if (run->parsed()) return cmd_run(path, bits);
        if (table->parsed()) return cmd_table(path, arity);
        if (transform->parsed()) return cmd_transform(kind, path);
        if (reduce->parsed()) return cmd_reduce(path, bits, m, map_path);
        if (satc->parsed()) return cmd_satc(path);
        if (check->parsed()) return cmd_check(path);
        if (rank->parsed()) return cmd_rank(set_text);
        if (unrank->parsed()) return cmd_unrank(index);
    } catch (const spis::SyntaxError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const spis::IllegalInstruction& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const spis::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "bad input: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
