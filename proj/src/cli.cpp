#include "espeed/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "espeed/dedicated2.hpp"
#include "espeed/duropt.hpp"
#include "espeed/gadgets.hpp"
#include "espeed/gantt.hpp"
#include "espeed/io.hpp"
#include "espeed/listsched.hpp"
#include "espeed/oracle.hpp"
#include "espeed/sequencing.hpp"

namespace espeed::cli {

namespace {

struct RunConfig {
        std::string instance_path;
        std::string schedule_path;
        std::string output_path;
        std::string gantt_path;
        std::string witness_path;
        std::string algo = "rigid";
        std::optional<double> alpha;
        std::uint64_t seed = 42;
        std::size_t count = 100;
        unsigned jobs = 1;
        bool trace = false;
        bool preemptive = false;
        bool nonpreemptive = false;
        bool numeric = false;

        // gen
        std::string gadget;
        bool random = false;
        std::string kind = "rigid";
        int n = 10;
        int m = 8;
        std::string work = "identical";
        std::string a_list, partition, edges, coloring;
        int B = 0, q = 0, vertices = 0;

        // lb / duropt
        std::string permutation;
        std::string weights, coeffs;
        double budget = 1.0;
};

template <class T>
std::vector<T> split_list(const std::string& text, char sep = ',')
{
        std::vector<T> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, sep)) {
                if (item.find_first_not_of(" \t") == std::string::npos) continue;
                std::istringstream conv(item);
                T v{};
                if (!(conv >> v)) throw Error("cannot parse list element '" + item + "'");
                std::string rest;
                if (conv >> rest) throw Error("cannot parse list element '" + item + "'");
                out.push_back(v);
        }
        return out;
}

std::vector<double> rounded(const std::vector<double>& v)
{
        std::vector<double> r;
        for (double x : v) r.push_back(round9(x));
        return r;
}

std::string sig9(double v)
{
        std::ostringstream out;
        out.precision(9);
        out << v;
        return out.str();
}

void emit(const json& j, const std::string& path, std::ostream& out)
{
        if (path.empty()) {
                out << j.dump(2) << '\n';
        } else {
                write_json(path, j);
        }
}

Instance load_instance(const RunConfig& cfg)
{
        auto inst = instance_from_json(read_json(cfg.instance_path));
        if (cfg.alpha) inst.alpha = Alpha{*cfg.alpha};
        require_valid(inst);
        return inst;
}

json lb_json(const LBReport& r)
{
        return json{{"permutation", r.permutation.order},
                    {"durations", rounded(r.durations)},
                    {"multiplier", round9(r.multiplier)},
                    {"value", round9(r.value)}};
}

int cmd_gen(const RunConfig& cfg, std::ostream& out)
{
        const Alpha alpha{cfg.alpha.value_or(3.0)};
        json doc;
        if (cfg.random) {
                WorkMode mode;
                if (cfg.work == "identical") mode = WorkMode::Identical;
                else if (cfg.work == "free") mode = WorkMode::Free;
                else throw Error("unknown work mode '" + cfg.work + "'");
                doc = instance_to_json(gen_random(kind_from_string(cfg.kind), cfg.n, cfg.m, cfg.seed, alpha, mode));
                doc["seed"] = cfg.seed;
        } else {
                GadgetOutput g;
                if (cfg.gadget == "3partition") {
                        std::optional<std::vector<std::array<int, 3>>> partition;
                        if (!cfg.partition.empty()) {
                                partition.emplace();
                                for (const auto& triple : split_list<std::string>(cfg.partition, ';')) {
                                        const auto idx = split_list<int>(triple);
                                        if (idx.size() != 3) throw Error("partition groups must have three indices");
                                        partition->push_back({idx[0], idx[1], idx[2]});
                                }
                        }
                        g = gen_3partition(split_list<int>(cfg.a_list), cfg.B, cfg.q, alpha, partition);
                } else if (cfg.gadget == "chromatic") {
                        std::vector<std::pair<int, int>> edges;
                        int max_vertex = -1;
                        for (const auto& e : split_list<std::string>(cfg.edges)) {
                                const auto uv = split_list<int>(e, '-');
                                if (uv.size() != 2) throw Error("edges must look like u-v");
                                edges.emplace_back(uv[0], uv[1]);
                                max_vertex = std::max({max_vertex, uv[0], uv[1]});
                        }
                        std::optional<std::vector<int>> coloring;
                        if (!cfg.coloring.empty()) coloring = split_list<int>(cfg.coloring);
                        g = gen_chromatic(edges, cfg.vertices > 0 ? cfg.vertices : max_vertex + 1, alpha, coloring);
                } else {
                        throw Error("choose --gadget 3partition|chromatic or --random");
                }
                doc = instance_to_json(g.instance);
                doc["reduction"] = g.reduction;
                doc["threshold"] = g.threshold;
                if (g.witness_sumc) doc["witness_sumc"] = *g.witness_sumc;
                if (!cfg.witness_path.empty()) {
                        if (!g.witness) throw Error("--witness needs a certificate (--partition or --coloring)");
                        write_json(cfg.witness_path, schedule_to_json(*g.witness));
                }
        }
        emit(doc, cfg.output_path, out);
        return exit_ok;
}

int cmd_lb(const RunConfig& cfg, std::ostream& out)
{
        const auto inst = load_instance(cfg);
        json doc;
        doc["kind"] = to_string(inst.kind);
        if (inst.kind == JobKind::Dedicated) {
                if (!cfg.permutation.empty()) throw Error("--permutation is not supported for dedicated instances");
                const auto lb = lb_dedicated2(inst, inst.energy);
                doc["first"] = lb_json(lb.first);
                doc["second"] = lb_json(lb.second);
                doc["value"] = round9(lb.value);
        } else {
                Permutation perm;
                if (!cfg.permutation.empty()) perm.order = split_list<JobId>(cfg.permutation);
                else perm = inst.kind == JobKind::Rigid ? order_rigid(inst) : order_moldable(inst);
                const auto rep = inst.kind == JobKind::Rigid ? lb_rigid(perm, inst) : lb_moldable(perm, inst);
                doc.update(lb_json(rep));
        }
        if (cfg.alpha) doc["alpha_override"] = *cfg.alpha;
        out << doc.dump(2) << '\n';
        return exit_ok;
}

int cmd_schedule(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
        const auto inst = load_instance(cfg);
        const auto algo = algorithm_from_string(cfg.preemptive && cfg.algo == "dedicated2" ? "dedicated2-pmtn" : cfg.algo);
        Schedule sched;
        double lb = 0.0;
        json doc;
        VerifyOptions opts;
        switch (algo) {
        case Algorithm::Rigid:
        case Algorithm::Moldable: {
                auto r = algo == Algorithm::Rigid ? schedule_rigid(inst) : schedule_moldable(inst);
                sched = std::move(r.schedule);
                lb = r.lb;
                opts.require_nonpreemptive = true;
                break;
        }
        case Algorithm::Dedicated2:
        case Algorithm::Dedicated2Preemptive: {
                auto r = schedule_dedicated2(inst);
                lb = r.lb;
                if (cfg.trace) {
                        auto sub = [](const SubSchedule& s) {
                                return json{{"order", s.order.order},
                                            {"durations", s.durations},
                                            {"completions", s.completions}};
                        };
                        json pre = json::array();
                        for (const auto& p : r.preemptions) {
                                pre.push_back(json{{"job", p.preempted_job}, {"blocker", p.blocker}, {"g", p.g}, {"h", p.h}});
                        }
                        doc["trace"] = json{{"s1", sub(r.subs.first)},
                                            {"s2", sub(r.subs.second)},
                                            {"merged", schedule_to_json(r.merged)},
                                            {"normalized", schedule_to_json(r.normalized)},
                                            {"moves", r.moves},
                                            {"preemptions", pre},
                                            {"final", schedule_to_json(r.final_schedule)}};
                }
                if (algo == Algorithm::Dedicated2) {
                        sched = std::move(r.final_schedule);
                        opts.require_nonpreemptive = true;
                } else {
                        sched = std::move(r.normalized);
                }
                break;
        }
        }
        const auto rep = verify_schedule(sched, inst, opts);
        if (!rep.ok()) throw Error("constructed schedule failed verification: " + rep.violations.front());

        doc["pieces"] = schedule_to_json(sched)["pieces"];
        if (cfg.alpha) doc["alpha_override"] = *cfg.alpha;
        emit(doc, cfg.output_path, out);
        if (!cfg.gantt_path.empty()) emit_gantt(sched, inst, cfg.gantt_path);

        std::ostream& summary = cfg.output_path.empty() ? err : out;
        summary << "algo=" << to_string(algo) << " sumc=" << sig9(rep.sum_completion) << " lb=" << sig9(lb)
                << " ratio=" << sig9(rep.sum_completion / lb) << " energy=" << sig9(rep.energy_used)
                << " slack=" << sig9(inst.energy - rep.energy_used) << '\n';
        return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
        const auto inst = load_instance(cfg);
        const auto sched = schedule_from_json(read_json(cfg.schedule_path));
        VerifyOptions opts;
        opts.require_nonpreemptive = cfg.nonpreemptive;
        const auto rep = verify_schedule(sched, inst, opts);
        json doc{{"ok", rep.ok()},
                 {"capacity_ok", rep.capacity_ok},
                 {"demand_ok", rep.demand_ok},
                 {"energy_ok", rep.energy_ok},
                 {"complete", rep.complete},
                 {"work_ok", rep.work_ok},
                 {"nonpreemptive", rep.nonpreemptive},
                 {"energy_used", round9(rep.energy_used)},
                 {"energy_budget", round9(rep.energy_budget)},
                 {"sum_completion", round9(rep.sum_completion)},
                 {"violations", rep.violations}};
        if (cfg.alpha) doc["alpha_override"] = *cfg.alpha;
        out << doc.dump(2) << '\n';
        if (!cfg.gantt_path.empty()) emit_gantt(sched, inst, cfg.gantt_path);
        if (!rep.ok()) {
                err << "error: schedule infeasible: " << rep.violations.front() << '\n';
                return exit_domain;
        }
        return exit_ok;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
        SweepOptions opts;
        opts.algorithm = algorithm_from_string(cfg.algo);
        opts.count = cfg.count;
        opts.seed = cfg.seed;
        opts.alpha = cfg.alpha;
        opts.workers = cfg.jobs;
        if (opts.alpha && !(*opts.alpha > 1.0)) throw Error("alpha must exceed 1");
        const auto records = ratio_sweep(opts);
        const auto csv = ratio_csv(records);
        if (cfg.output_path.empty()) out << csv;
        else write_text(cfg.output_path, csv);

        std::size_t passed = 0, feasible = 0;
        double worst = 0.0;
        for (const auto& r : records) {
                passed += r.pass;
                feasible += r.feasible;
                worst = std::max(worst, r.ratio);
        }
        std::ostream& summary = cfg.output_path.empty() ? err : out;
        summary << "kind=" << to_string(opts.algorithm) << " count=" << records.size() << " pass=" << passed
                << " feasible=" << feasible << " max_ratio=" << sig9(worst) << '\n';
        return passed == records.size() && feasible == records.size() ? exit_ok : exit_domain;
}

int cmd_duropt(const RunConfig& cfg, std::ostream& out)
{
        WeightedProgram prog;
        prog.weights = split_list<double>(cfg.weights);
        prog.energy_coeffs = split_list<double>(cfg.coeffs);
        prog.budget = cfg.budget;
        prog.alpha = Alpha{cfg.alpha.value_or(3.0)};
        const auto sol = cfg.numeric ? solve_weighted_numeric(prog) : solve_weighted(prog);
        out << json{{"durations", rounded(sol.durations)},
                    {"multiplier", round9(sol.multiplier)},
                    {"objective", round9(sol.objective)}}
                   .dump(2)
            << '\n';
        return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
        RunConfig cfg;
        if (const char* env = std::getenv("ESPEED_SEED")) {
                try {
                        cfg.seed = std::stoull(env);
                } catch (const std::exception&) {
                        err << "error: ESPEED_SEED is not an unsigned integer\n";
                        return exit_usage;
                }
        }

        CLI::App app{"Energy-budgeted speed-scaling schedules for multiprocessor jobs", "espeed"};
        app.require_subcommand(1);

        auto* gen = app.add_subcommand("gen", "Generate a random or reduction instance");
        gen->add_option("--gadget", cfg.gadget, "3partition | chromatic");
        gen->add_flag("--random", cfg.random, "Random instance");
        gen->add_option("--kind", cfg.kind, "rigid | moldable | dedicated");
        gen->add_option("-n", cfg.n, "Job count")->check(CLI::PositiveNumber);
        gen->add_option("-m", cfg.m, "Processor count")->check(CLI::PositiveNumber);
        gen->add_option("--work", cfg.work, "identical | free");
        gen->add_option("--seed", cfg.seed, "Seed (default: $ESPEED_SEED or 42)");
        gen->add_option("--alpha", cfg.alpha, "Power exponent (default 3)");
        gen->add_option("--a", cfg.a_list, "3-partition elements, comma separated");
        gen->add_option("--B", cfg.B, "3-partition bin size");
        gen->add_option("--q", cfg.q, "3-partition group count");
        gen->add_option("--partition", cfg.partition, "Certificate: index triples, e.g. \"0,1,2;3,4,5\"");
        gen->add_option("--edges", cfg.edges, "Cubic graph edges, e.g. \"0-1,0-2,...\"");
        gen->add_option("--vertices", cfg.vertices, "Vertex count (default: largest id + 1)");
        gen->add_option("--coloring", cfg.coloring, "Certificate: one color in {0,1,2} per edge");
        gen->add_option("-o,--output", cfg.output_path, "Instance file (default stdout)");
        gen->add_option("--witness", cfg.witness_path, "Write the certificate schedule here");

        auto* lb = app.add_subcommand("lb", "Lower bound for an instance");
        lb->add_option("--instance", cfg.instance_path)->required()->check(CLI::ExistingFile);
        lb->add_option("--permutation", cfg.permutation, "Job ids, comma separated");
        lb->add_option("--alpha", cfg.alpha, "Override the instance's alpha");

        auto* sched = app.add_subcommand("schedule", "Build a schedule");
        sched->add_option("--instance", cfg.instance_path)->required()->check(CLI::ExistingFile);
        sched->add_option("--algo", cfg.algo, "rigid | moldable | dedicated2")
            ->check(CLI::IsMember({"rigid", "moldable", "dedicated2", "dedicated2-pmtn"}));
        sched->add_flag("--preemptive", cfg.preemptive, "dedicated2: stop at the normalized preemptive schedule");
        sched->add_flag("--trace", cfg.trace, "dedicated2: include every pipeline stage");
        sched->add_option("-o,--output", cfg.output_path, "Schedule file (default stdout)");
        sched->add_option("--gantt", cfg.gantt_path, "Write an SVG chart");
        sched->add_option("--alpha", cfg.alpha, "Override the instance's alpha");

        auto* verify = app.add_subcommand("verify", "Check a schedule against an instance");
        verify->add_option("--instance", cfg.instance_path)->required()->check(CLI::ExistingFile);
        verify->add_option("--schedule", cfg.schedule_path)->required()->check(CLI::ExistingFile);
        verify->add_flag("--nonpreemptive", cfg.nonpreemptive, "Require one piece per job");
        verify->add_option("--gantt", cfg.gantt_path, "Write an SVG chart");
        verify->add_option("--alpha", cfg.alpha, "Override the instance's alpha");

        auto* oracle = app.add_subcommand("oracle", "Ratio sweep over random instances");
        oracle->add_option("--kind", cfg.algo, "rigid | moldable | dedicated2 | dedicated2-pmtn")
            ->check(CLI::IsMember({"rigid", "moldable", "dedicated2", "dedicated2-pmtn"}));
        oracle->add_option("--count", cfg.count)->check(CLI::NonNegativeNumber);
        oracle->add_option("--seed", cfg.seed);
        oracle->add_option("--alpha", cfg.alpha, "Fixed alpha (default: cycle 1.5, 2, 3)");
        oracle->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
        oracle->add_option("-o,--output", cfg.output_path, "CSV file (default stdout)");

        auto* dur = app.add_subcommand("duropt", "Solve one weighted duration program");
        dur->add_option("--weights", cfg.weights)->required();
        dur->add_option("--coeffs", cfg.coeffs)->required();
        dur->add_option("-E", cfg.budget)->required();
        dur->add_option("--alpha", cfg.alpha, "Power exponent (default 3)");
        dur->add_flag("--numeric", cfg.numeric, "Use bisection instead of the closed form");

        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
                app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
                return app.exit(e, out, err);
        } catch (const CLI::CallForAllHelp& e) {
                return app.exit(e, out, err);
        } catch (const CLI::ParseError& e) {
                err << "error: " << e.what() << '\n';
                return exit_usage;
        }

        try {
                if (*gen) return cmd_gen(cfg, out);
                if (*lb) return cmd_lb(cfg, out);
                if (*sched) return cmd_schedule(cfg, out, err);
                if (*verify) return cmd_verify(cfg, out, err);
                if (*oracle) return cmd_oracle(cfg, out, err);
                if (*dur) return cmd_duropt(cfg, out);
        } catch (const Error& e) {
                err << "error: " << e.what() << '\n';
                return exit_domain;
        } catch (const std::exception& e) {
                err << "error: internal: " << e.what() << '\n';
                return exit_domain;
        }
        return exit_usage;
}

}  // namespace espeed::cli
