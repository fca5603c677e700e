#include "miniomt.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "bench/brute_force.hpp"
#include "bench/strip_packing.hpp"
#include "bench/suite.hpp"
#include "frontend/parser.hpp"
#include "omt/driver.hpp"

using namespace miniomt;

struct miniomt_problem {
    Problem p;
    std::string text;  // original or generated source
};

struct miniomt_result {
    omt::OmtOutcome out;
    const miniomt_problem* problem;
};

namespace {

thread_local std::string g_last_error;

miniomt_status fail(miniomt_status st, const std::string& msg) {
    g_last_error = msg;
    return st;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(malloc(s.size() + 1));
    memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// "p/q" or "-p/q"; no decimals.
Rational parse_bound(const std::string& s) {
    auto q = rat_from_string(s);
    if (!q) throw std::invalid_argument("bad rational in box: " + s);
    return *q;
}

bench::Box parse_box(const std::string& spec, const Problem& p) {
    bench::Box box;
    if (spec.find('=') == std::string::npos) {
        size_t colon = spec.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("box must be lo:hi");
        Rational lo = parse_bound(spec.substr(0, colon));
        Rational hi = parse_bound(spec.substr(colon + 1));
        for (VarId v = 0; v < p.num_vars(); ++v) box[v] = {lo, hi};
        return box;
    }
    std::istringstream in(spec);
    std::string part;
    while (std::getline(in, part, ',')) {
        size_t eq = part.find('=');
        size_t colon = part.find(':', eq);
        if (eq == std::string::npos || colon == std::string::npos)
            throw std::invalid_argument("box entries must be name=lo:hi");
        std::string name = part.substr(0, eq);
        VarId var = 0;
        bool found = false;
        for (VarId v = 0; v < p.num_vars(); ++v)
            if (p.var_names[v] == name) {
                var = v;
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("unknown variable in box: " + name);
        box[var] = {parse_bound(part.substr(eq + 1, colon - eq - 1)),
                    parse_bound(part.substr(colon + 1))};
    }
    return box;
}

}  // namespace

extern "C" {

miniomt_status miniomt_parse(const char* text, const char* name, miniomt_problem** out) {
    if (!text || !out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    try {
        auto* h = new miniomt_problem;
        h->text = text;
        h->p = parse_problem(h->text, name ? name : "");
        *out = h;
        return MINIOMT_OK;
    } catch (const ParseError& e) {
        return fail(MINIOMT_ERR_PARSE, e.what());
    } catch (const std::exception& e) {
        return fail(MINIOMT_ERR_INTERNAL, e.what());
    }
}

miniomt_status miniomt_generate_sp(size_t n, uint64_t seed, int lira, miniomt_problem** out) {
    if (!out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    try {
        bench::SpInstance inst = bench::sample_sp(n, seed, lira != 0);
        auto* h = new miniomt_problem;
        h->p = bench::build_sp_problem(inst);
        h->text = bench::sp_problem_text(inst);
        *out = h;
        return MINIOMT_OK;
    } catch (const std::exception& e) {
        return fail(MINIOMT_ERR_INVALID_ARG, e.what());
    }
}

miniomt_status miniomt_problem_text(const miniomt_problem* p, char** out) {
    if (!p || !out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    *out = dup_string(p->text.empty() ? print_problem(p->p) : p->text);
    return MINIOMT_OK;
}

void miniomt_problem_free(miniomt_problem* p) { delete p; }

miniomt_status miniomt_solve(const miniomt_problem* p, const miniomt_config* cfg,
                             miniomt_result** out) {
    if (!p || !out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    try {
        omt::OmtConfig oc;
        if (cfg) {
            std::string red = cfg->reduction ? cfg->reduction : "none";
            if (red == "none")
                oc.strategy = reduce::Strategy::None;
            else if (red == "basic")
                oc.strategy = reduce::Strategy::Basic;
            else if (red == "guided")
                oc.strategy = reduce::Strategy::Guided;
            else
                return fail(MINIOMT_ERR_INVALID_ARG, "unknown reduction: " + red);
            if (cfg->lia_mode) {
                std::string lm = cfg->lia_mode;
                if (lm == "full")
                    oc.lia_mode = lia::BnbConfig::Mode::Full;
                else if (lm == "truncated")
                    oc.lia_mode = lia::BnbConfig::Mode::Truncated;
                else
                    return fail(MINIOMT_ERR_INVALID_ARG, "unknown lia mode: " + lm);
            }
            oc.learn_block_lemma = cfg->block_lemma != 0;
            if (cfg->timeout_s > 0) oc.time_budget_s = cfg->timeout_s;
            oc.seed = cfg->seed;
        }
        auto* r = new miniomt_result;
        r->problem = p;
        r->out = omt::solve(p->p, oc);
        *out = r;
        return MINIOMT_OK;
    } catch (const std::exception& e) {
        return fail(MINIOMT_ERR_INTERNAL, e.what());
    }
}

miniomt_outcome miniomt_result_outcome(const miniomt_result* r) {
    switch (r->out.status) {
        case omt::OmtOutcome::Status::Optimum: return MINIOMT_OPTIMUM;
        case omt::OmtOutcome::Status::Unsat: return MINIOMT_UNSAT;
        case omt::OmtOutcome::Status::Unbounded: return MINIOMT_UNBOUNDED;
        case omt::OmtOutcome::Status::BudgetExhausted: return MINIOMT_TIMEOUT;
    }
    return MINIOMT_UNSAT;
}

miniomt_status miniomt_result_value(const miniomt_result* r, char** out) {
    if (!r || !out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    if (!r->out.value) return fail(MINIOMT_ERR_INVALID_ARG, "result carries no value");
    DeltaRational v = *r->out.value;
    if (r->problem->p.maximize) v = -v;
    *out = dup_string(to_string(v));
    return MINIOMT_OK;
}

miniomt_status miniomt_result_model(const miniomt_result* r, char** out) {
    if (!r || !out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    if (!r->out.model) return fail(MINIOMT_ERR_INVALID_ARG, "result carries no model");
    std::ostringstream os;
    const Problem& p = r->problem->p;
    for (VarId v = 0; v < p.num_vars(); ++v) {
        auto it = r->out.model->find(v);
        os << p.var_names[v] << "=" << (it == r->out.model->end() ? "0" : rat_to_string(it->second))
           << "\n";
    }
    *out = dup_string(os.str());
    return MINIOMT_OK;
}

size_t miniomt_result_iterations(const miniomt_result* r) {
    return r->out.trace.iterations.size();
}

miniomt_status miniomt_result_trace_csv(const miniomt_result* r, int include_time, char** out) {
    if (!r || !out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    *out = dup_string(bench::trace_to_csv(r->out.trace, include_time != 0));
    return MINIOMT_OK;
}

void miniomt_result_free(miniomt_result* r) { delete r; }

miniomt_status miniomt_oracle(const miniomt_problem* p, const char* box_spec, char** value_out,
                              miniomt_outcome* outcome_out) {
    if (!p || !value_out || !outcome_out) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    try {
        std::optional<bench::Box> box;
        if (box_spec && *box_spec) box = parse_box(box_spec, p->p);
        bench::OracleResult res = bench::brute_force_omt(p->p, box);
        switch (res.status) {
            case bench::OracleResult::Status::Optimum: {
                *outcome_out = MINIOMT_OPTIMUM;
                DeltaRational v = res.value;
                if (p->p.maximize) v = -v;
                *value_out = dup_string(to_string(v));
                break;
            }
            case bench::OracleResult::Status::Unsat:
                *outcome_out = MINIOMT_UNSAT;
                *value_out = dup_string("");
                break;
            case bench::OracleResult::Status::Unbounded:
                *outcome_out = MINIOMT_UNBOUNDED;
                *value_out = dup_string("");
                break;
        }
        return MINIOMT_OK;
    } catch (const std::length_error& e) {
        return fail(MINIOMT_ERR_UNSUPPORTED, e.what());
    } catch (const std::exception& e) {
        return fail(MINIOMT_ERR_INVALID_ARG, e.what());
    }
}

miniomt_status miniomt_run_suite(const char* suite_path, const char* out_csv) {
    if (!suite_path || !out_csv) return fail(MINIOMT_ERR_INVALID_ARG, "null argument");
    try {
        std::ifstream in(suite_path);
        if (!in) return fail(MINIOMT_ERR_IO, std::string("cannot open ") + suite_path);
        std::stringstream buf;
        buf << in.rdbuf();
        bench::Suite suite = bench::parse_suite(buf.str());
        std::string base_dir;
        std::string sp = suite_path;
        size_t slash = sp.find_last_of('/');
        if (slash != std::string::npos) base_dir = sp.substr(0, slash);
        auto records = bench::run_suite(suite, base_dir);
        bench::write_suite_results(records, suite, out_csv);
        return MINIOMT_OK;
    } catch (const std::exception& e) {
        return fail(MINIOMT_ERR_INTERNAL, e.what());
    }
}

const char* miniomt_last_error(void) { return g_last_error.c_str(); }

void miniomt_string_free(char* s) { free(s); }

}  // extern "C"
