#include "bench/suite.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bench/strip_packing.hpp"
#include "frontend/parser.hpp"

namespace miniomt::bench {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Minimal TOML subset: [[table]] headers and key = value lines where value
// is a quoted string, integer, float, or true/false. '#' starts a comment.
using Table = std::map<std::string, std::string>;

std::vector<std::pair<std::string, Table>> parse_tables(const std::string& text) {
    std::vector<std::pair<std::string, Table>> tables;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.size() > 4 && line.substr(0, 2) == "[[" &&
            line.substr(line.size() - 2) == "]]") {
            tables.emplace_back(trim(line.substr(2, line.size() - 4)), Table{});
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos || tables.empty())
            throw std::runtime_error("suite file: bad line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
            val = val.substr(1, val.size() - 2);
        tables.back().second[key] = val;
    }
    return tables;
}

const std::string& require(const Table& t, const std::string& key, const std::string& ctx) {
    auto it = t.find(key);
    if (it == t.end()) throw std::runtime_error("suite file: missing '" + key + "' in " + ctx);
    return it->second;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string format_time(double t) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed << t;
    return os.str();
}

}  // namespace

Suite parse_suite(const std::string& text) {
    Suite suite;
    for (const auto& [kind, tbl] : parse_tables(text)) {
        if (kind == "instance") {
            SuiteInstance inst;
            inst.name = require(tbl, "name", "[[instance]]");
            if (auto it = tbl.find("file"); it != tbl.end()) {
                inst.file = it->second;
            } else {
                if (require(tbl, "generate", inst.name) != "sp")
                    throw std::runtime_error("suite file: unknown generator in " + inst.name);
                inst.generated = true;
                inst.n = std::stoul(require(tbl, "n", inst.name));
                inst.gen_seed = std::stoull(require(tbl, "seed", inst.name));
                inst.lira = require(tbl, "encoding", inst.name) == "lira";
            }
            suite.instances.push_back(std::move(inst));
        } else if (kind == "config") {
            SuiteConfig cfg;
            cfg.name = require(tbl, "name", "[[config]]");
            if (auto it = tbl.find("reduction"); it != tbl.end()) {
                if (it->second == "none")
                    cfg.strategy = reduce::Strategy::None;
                else if (it->second == "basic")
                    cfg.strategy = reduce::Strategy::Basic;
                else if (it->second == "guided")
                    cfg.strategy = reduce::Strategy::Guided;
                else
                    throw std::runtime_error("suite file: bad reduction in " + cfg.name);
            }
            if (auto it = tbl.find("block_lemma"); it != tbl.end())
                cfg.block_lemma = it->second == "on" || it->second == "true";
            if (auto it = tbl.find("lia"); it != tbl.end()) {
                if (it->second == "full")
                    cfg.lia_mode = lia::BnbConfig::Mode::Full;
                else if (it->second == "truncated")
                    cfg.lia_mode = lia::BnbConfig::Mode::Truncated;
                else
                    throw std::runtime_error("suite file: bad lia mode in " + cfg.name);
            }
            if (auto it = tbl.find("timeout"); it != tbl.end()) cfg.timeout_s = std::stod(it->second);
            if (auto it = tbl.find("seed"); it != tbl.end()) cfg.seed = std::stoull(it->second);
            suite.configs.push_back(std::move(cfg));
        } else {
            throw std::runtime_error("suite file: unknown table [[" + kind + "]]");
        }
    }
    return suite;
}

std::vector<RunRecord> run_suite(const Suite& suite, const std::string& base_dir) {
    std::vector<RunRecord> records;
    for (const SuiteInstance& inst : suite.instances) {
        std::optional<Problem> problem;
        std::string load_error;
        try {
            if (inst.generated) {
                problem = build_sp_problem(sample_sp(inst.n, inst.gen_seed, inst.lira));
            } else {
                std::filesystem::path path = inst.file;
                if (path.is_relative() && !base_dir.empty())
                    path = std::filesystem::path(base_dir) / path;
                std::ifstream in(path);
                if (!in) throw std::runtime_error("cannot open " + path.string());
                std::stringstream buf;
                buf << in.rdbuf();
                problem = parse_problem(buf.str(), inst.name);
            }
        } catch (const std::exception& e) {
            load_error = e.what();
        }
        for (const SuiteConfig& cfg : suite.configs) {
            RunRecord rec;
            rec.instance = inst.name;
            rec.config = cfg.name;
            rec.seed = cfg.seed;
            if (!problem) {
                rec.status = "error";
                records.push_back(std::move(rec));
                continue;
            }
            try {
                omt::OmtConfig oc;
                oc.strategy = cfg.strategy;
                oc.learn_block_lemma = cfg.block_lemma;
                oc.lia_mode = cfg.lia_mode;
                oc.time_budget_s = cfg.timeout_s;
                oc.seed = cfg.seed;
                omt::OmtOutcome out = omt::solve(*problem, oc);
                switch (out.status) {
                    case omt::OmtOutcome::Status::Optimum: rec.status = "sat"; break;
                    case omt::OmtOutcome::Status::Unsat: rec.status = "unsat"; break;
                    case omt::OmtOutcome::Status::Unbounded: rec.status = "unbounded"; break;
                    case omt::OmtOutcome::Status::BudgetExhausted: rec.status = "timeout"; break;
                }
                if (out.value) {
                    DeltaRational v = *out.value;
                    if (problem->maximize) v = -v;
                    rec.ub = to_string(v);
                }
                rec.iterations = out.trace.iterations.size();
                rec.time_s = out.trace.total_time_s;
            } catch (const std::exception&) {
                rec.status = "error";
            }
            records.push_back(std::move(rec));
        }
    }
    return records;
}

void write_suite_results(const std::vector<RunRecord>& records, const Suite& suite,
                         const std::string& out_csv) {
    std::ofstream out(out_csv);
    if (!out) throw std::runtime_error("cannot write " + out_csv);
    out << "instance,config,status,ub,iterations,time_s,seed\n";
    for (const RunRecord& r : records) {
        out << csv_escape(r.instance) << "," << csv_escape(r.config) << "," << r.status << ","
            << csv_escape(r.ub) << "," << r.iterations << "," << format_time(r.time_s) << ","
            << r.seed << "\n";
    }

    // Scatter pairs: one file per metric per ordered config pair.
    std::filesystem::path dir = std::filesystem::path(out_csv).parent_path();
    auto find_record = [&](const std::string& inst, const std::string& cfg) -> const RunRecord* {
        for (const RunRecord& r : records)
            if (r.instance == inst && r.config == cfg) return &r;
        return nullptr;
    };
    const char* metrics[] = {"time_s", "ub", "iterations"};
    for (size_t i = 0; i < suite.configs.size(); ++i) {
        for (size_t j = i + 1; j < suite.configs.size(); ++j) {
            const std::string& a = suite.configs[i].name;
            const std::string& b = suite.configs[j].name;
            for (const char* metric : metrics) {
                std::ofstream pf(dir / (std::string(metric) + "_" + a + "_vs_" + b + ".csv"));
                pf << "instance," << a << "," << b << "\n";
                for (const SuiteInstance& inst : suite.instances) {
                    const RunRecord* ra = find_record(inst.name, a);
                    const RunRecord* rb = find_record(inst.name, b);
                    if (!ra || !rb) continue;
                    auto field = [&](const RunRecord& r) -> std::string {
                        if (std::string(metric) == "time_s") return format_time(r.time_s);
                        if (std::string(metric) == "ub") return r.ub;
                        return std::to_string(r.iterations);
                    };
                    pf << csv_escape(inst.name) << "," << csv_escape(field(*ra)) << ","
                       << csv_escape(field(*rb)) << "\n";
                }
            }
        }
    }
}

std::string trace_to_csv(const omt::OmtTrace& trace, bool include_time) {
    std::ostringstream os;
    os << "iteration," << (include_time ? "time_s," : "")
       << "ub,literals_dropped,minimize_calls\n";
    for (const omt::IterationRecord& r : trace.iterations) {
        os << r.index << ",";
        if (include_time) os << format_time(r.time_s) << ",";
        os << to_string(r.ub) << "," << r.literals_dropped << "," << r.minimize_calls << "\n";
    }
    return os.str();
}

}  // namespace miniomt::bench
