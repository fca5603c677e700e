#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "miniomt.h"

namespace {

constexpr int EXIT_OPTIMUM = 0;
constexpr int EXIT_UNSAT = 10;
constexpr int EXIT_TIMEOUT = 20;
constexpr int EXIT_UNBOUNDED = 30;
constexpr int EXIT_ERROR = 1;

int die(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return EXIT_ERROR;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    miniomt_string_free(s);
    return out;
}

int load_problem(const std::string& path, miniomt_problem** out) {
    std::ifstream in(path);
    if (!in) return die("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (miniomt_parse(buf.str().c_str(), path.c_str(), out) != MINIOMT_OK)
        return die(miniomt_last_error());
    return EXIT_OPTIMUM;
}

int outcome_code(miniomt_outcome oc) {
    switch (oc) {
        case MINIOMT_OPTIMUM: return EXIT_OPTIMUM;
        case MINIOMT_UNSAT: return EXIT_UNSAT;
        case MINIOMT_TIMEOUT: return EXIT_TIMEOUT;
        case MINIOMT_UNBOUNDED: return EXIT_UNBOUNDED;
    }
    return EXIT_ERROR;
}

const char* outcome_name(miniomt_outcome oc) {
    switch (oc) {
        case MINIOMT_OPTIMUM: return "optimum";
        case MINIOMT_UNSAT: return "unsat";
        case MINIOMT_TIMEOUT: return "timeout";
        case MINIOMT_UNBOUNDED: return "unbounded";
    }
    return "error";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"miniomt: optimizing SMT solver for linear rational/integer arithmetic"};
    app.require_subcommand(1);

    // solve
    std::string solve_file, reduction = "none", lia_mode, block_lemma = "on", trace_file;
    double timeout = 0;
    uint64_t seed = 0;
    auto* solve = app.add_subcommand("solve", "solve a problem file");
    solve->add_option("file", solve_file, "problem file")->required();
    solve->add_option("--reduction", reduction, "assignment reduction: none|basic|guided")
        ->check(CLI::IsMember({"none", "basic", "guided"}));
    solve->add_option("--lia", lia_mode, "integer minimization mode: full|truncated")
        ->check(CLI::IsMember({"full", "truncated"}));
    solve->add_option("--block-lemma", block_lemma, "learn blocking lemmas: on|off")
        ->check(CLI::IsMember({"on", "off"}));
    solve->add_option("--timeout", timeout, "time budget in seconds");
    solve->add_option("--seed", seed, "SAT heuristic seed");
    solve->add_option("--trace", trace_file, "write the per-iteration trace CSV here");

    // generate
    std::string gen_kind, gen_encoding = "lra", gen_out;
    size_t gen_n = 0;
    uint64_t gen_seed = 0;
    auto* generate = app.add_subcommand("generate", "generate a benchmark instance");
    generate->add_option("kind", gen_kind, "instance family (sp)")->required();
    generate->add_option("--n", gen_n, "number of rectangles")->required();
    generate->add_option("--seed", gen_seed, "generator seed");
    generate->add_option("--encoding", gen_encoding, "lra|lira")
        ->check(CLI::IsMember({"lra", "lira"}));
    generate->add_option("-o,--output", gen_out, "output file (default stdout)");

    // bench
    std::string suite_file, bench_out = "results.csv";
    auto* bench = app.add_subcommand("bench", "run an experiment suite");
    bench->add_option("--suite", suite_file, "suite description (TOML)")->required();
    bench->add_option("-o,--output", bench_out, "results CSV path");

    // oracle
    std::string oracle_file, box_spec;
    auto* oracle = app.add_subcommand("oracle", "brute-force reference optimum");
    oracle->add_option("file", oracle_file, "problem file")->required();
    oracle->add_option("--box", box_spec, "variable box, lo:hi or name=lo:hi,...");

    CLI11_PARSE(app, argc, argv);

    if (solve->parsed()) {
        miniomt_problem* p = nullptr;
        if (int rc = load_problem(solve_file, &p)) return rc;
        miniomt_config cfg{};
        cfg.reduction = reduction.c_str();
        cfg.lia_mode = lia_mode.empty() ? nullptr : lia_mode.c_str();
        cfg.block_lemma = block_lemma == "on";
        cfg.timeout_s = timeout;
        cfg.seed = seed;
        miniomt_result* r = nullptr;
        if (miniomt_solve(p, &cfg, &r) != MINIOMT_OK) {
            miniomt_problem_free(p);
            return die(miniomt_last_error());
        }
        miniomt_outcome oc = miniomt_result_outcome(r);
        std::cout << outcome_name(oc) << "\n";
        char* s = nullptr;
        if (miniomt_result_value(r, &s) == MINIOMT_OK) std::cout << "value " << take(s) << "\n";
        if (miniomt_result_model(r, &s) == MINIOMT_OK) std::cout << take(s);
        std::cout << "iterations " << miniomt_result_iterations(r) << "\n";
        if (!trace_file.empty() && miniomt_result_trace_csv(r, 1, &s) == MINIOMT_OK) {
            std::ofstream out(trace_file);
            out << take(s);
        }
        miniomt_result_free(r);
        miniomt_problem_free(p);
        return outcome_code(oc);
    }

    if (generate->parsed()) {
        if (gen_kind != "sp") return die("unknown instance family: " + gen_kind);
        miniomt_problem* p = nullptr;
        if (miniomt_generate_sp(gen_n, gen_seed, gen_encoding == "lira", &p) != MINIOMT_OK)
            return die(miniomt_last_error());
        char* s = nullptr;
        miniomt_problem_text(p, &s);
        std::string text = take(s);
        if (gen_out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(gen_out);
            if (!out) {
                miniomt_problem_free(p);
                return die("cannot write " + gen_out);
            }
            out << text;
        }
        miniomt_problem_free(p);
        return 0;
    }

    if (bench->parsed()) {
        if (miniomt_run_suite(suite_file.c_str(), bench_out.c_str()) != MINIOMT_OK)
            return die(miniomt_last_error());
        return 0;
    }

    if (oracle->parsed()) {
        miniomt_problem* p = nullptr;
        if (int rc = load_problem(oracle_file, &p)) return rc;
        char* value = nullptr;
        miniomt_outcome oc;
        if (miniomt_oracle(p, box_spec.empty() ? nullptr : box_spec.c_str(), &value, &oc) !=
            MINIOMT_OK) {
            miniomt_problem_free(p);
            return die(miniomt_last_error());
        }
        std::string v = take(value);
        std::cout << outcome_name(oc) << "\n";
        if (oc == MINIOMT_OPTIMUM) std::cout << "value " << v << "\n";
        miniomt_problem_free(p);
        return outcome_code(oc);
    }

    return EXIT_ERROR;
}
