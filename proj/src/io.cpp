#include "espeed/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace espeed {

json instance_to_json(const Instance& inst)
{
        json jobs = json::array();
        for (const auto& job : inst.jobs) {
                json j{{"id", job.id}, {"work", job.total_work}};
                if (const auto* r = std::get_if<RigidSize>(&job.demand)) j["size"] = r->size;
                else if (const auto* c = std::get_if<MoldableCap>(&job.demand)) j["delta"] = c->delta;
                else j["fix"] = std::get<DedicatedSet>(job.demand).fix;
                jobs.push_back(std::move(j));
        }
        return json{{"kind", to_string(inst.kind)},
                    {"m", inst.m},
                    {"energy", inst.energy},
                    {"alpha", inst.alpha.value},
                    {"jobs", std::move(jobs)}};
}

Instance instance_from_json(const json& j)
{
        try {
                Instance inst;
                inst.kind = kind_from_string(j.at("kind").get<std::string>());
                inst.m = j.at("m").get<int>();
                inst.energy = j.at("energy").get<double>();
                inst.alpha = Alpha{j.at("alpha").get<double>()};
                for (const auto& jj : j.at("jobs")) {
                        Job job;
                        job.id = jj.at("id").get<JobId>();
                        job.total_work = jj.at("work").get<double>();
                        if (jj.contains("size")) job.demand = RigidSize{jj["size"].get<int>()};
                        else if (jj.contains("delta")) job.demand = MoldableCap{jj["delta"].get<int>()};
                        else if (jj.contains("fix")) job.demand = DedicatedSet{jj["fix"].get<std::vector<ProcId>>()};
                        else throw Error("job " + std::to_string(job.id) + " has no size, delta or fix");
                        inst.jobs.push_back(std::move(job));
                }
                return inst;
        } catch (const json::exception& e) {
                throw Error(std::string("malformed instance: ") + e.what());
        }
}

json schedule_to_json(const Schedule& sched)
{
        json pieces = json::array();
        for (const auto& p : sched.pieces) {
                pieces.push_back(
                    json{{"job", p.job}, {"procs", p.procs}, {"start", p.start}, {"end", p.end}, {"speed", p.speed}});
        }
        return json{{"pieces", std::move(pieces)}};
}

Schedule schedule_from_json(const json& j)
{
        try {
                Schedule sched;
                for (const auto& p : j.at("pieces")) {
                        sched.pieces.push_back(Piece{p.at("job").get<JobId>(), p.at("procs").get<std::vector<ProcId>>(),
                                                     p.at("start").get<double>(), p.at("end").get<double>(),
                                                     p.at("speed").get<double>()});
                }
                return sched;
        } catch (const json::exception& e) {
                throw Error(std::string("malformed schedule: ") + e.what());
        }
}

json read_json(const std::filesystem::path& path)
{
        std::ifstream in(path);
        if (!in) throw Error("cannot open " + path.string());
        try {
                return json::parse(in);
        } catch (const json::parse_error& e) {
                throw Error("cannot parse " + path.string() + ": " + e.what());
        }
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        out << text;
        if (!out) throw Error("cannot write " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

double round9(double v)
{
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return std::strtod(buf, nullptr);
}

}  // namespace espeed
