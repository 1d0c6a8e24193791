#include "espeed/gantt.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "espeed/io.hpp"

namespace espeed {

namespace {

constexpr const char* palette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                   "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string num(double v)
{
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return buf;
}

std::string sig(double v)
{
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
}

}  // namespace

std::string gantt_svg(const Schedule& sched, const Instance& inst)
{
        constexpr double left = 60.0, top = 20.0, lane = 30.0, width = 800.0;
        double horizon = 0.0, fastest = 0.0;
        for (const auto& p : sched.pieces) {
                horizon = std::max(horizon, p.end);
                fastest = std::max(fastest, p.speed);
        }
        if (horizon <= 0.0) horizon = 1.0;
        if (fastest <= 0.0) fastest = 1.0;
        const double scale = width / horizon;
        const double height = top + lane * inst.m + 50.0;

        std::string svg;
        svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(left + width + 20.0) + "\" height=\"" +
               num(height) + "\" font-family=\"monospace\" font-size=\"11\">\n";
        for (int q = 0; q < inst.m; ++q) {
                const double y = top + lane * q;
                svg += "<text x=\"4\" y=\"" + num(y + lane / 2 + 4) + "\">P" + std::to_string(q) + "</text>\n";
                svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(y + lane) + "\" x2=\"" + num(left + width) +
                       "\" y2=\"" + num(y + lane) + "\" stroke=\"#ccc\"/>\n";
        }
        for (const auto& p : sched.pieces) {
                const char* color = palette[static_cast<std::size_t>(std::abs(p.job)) % std::size(palette)];
                const double opacity = 0.25 + 0.75 * (p.speed / fastest);
                const double x = left + p.start * scale;
                const double w = std::max(p.length() * scale, 0.5);
                for (ProcId q : p.procs) {
                        const double y = top + lane * q + 2.0;
                        svg += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
                               num(lane - 4.0) + "\" data-job=\"" + std::to_string(p.job) + "\" fill=\"" + color + "\" fill-opacity=\"" + num(opacity) +
                               "\" stroke=\"#333\"><title>job " + std::to_string(p.job) + " [" + sig(p.start) + ", " +
                               sig(p.end) + ") speed " + sig(p.speed) + "</title></rect>\n";
                        svg += "<text x=\"" + num(x + w / 2) + "\" y=\"" + num(y + lane / 2 + 2) +
                               "\" text-anchor=\"middle\">" + std::to_string(p.job) + "</text>\n";
                }
        }
        double energy = integrated_energy(sched, inst.alpha);
        svg += "<text x=\"" + num(left) + "\" y=\"" + num(height - 15.0) + "\">sum C = " +
               sig(total_completion(sched)) + "  energy = " + sig(energy) + " / " + sig(inst.energy) +
               "  horizon = " + sig(horizon) + "</text>\n";
        svg += "</svg>\n";
        return svg;
}

void emit_gantt(const Schedule& sched, const Instance& inst, const std::filesystem::path& path)
{
        write_text(path, gantt_svg(sched, inst));
}

}  // namespace espeed
