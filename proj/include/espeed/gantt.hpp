#ifndef ESPEED_GANTT_HPP
#define ESPEED_GANTT_HPP

#include <filesystem>
#include <string>

#include "espeed/model.hpp"

namespace espeed {

// Static SVG chart: one lane per processor, one rectangle per piece and lane,
// labeled with the job id. Pieces of one job share a color; fill opacity
// encodes speed relative to the fastest piece. Output is a pure function of
// the inputs.
std::string gantt_svg(const Schedule& sched, const Instance& inst);

void emit_gantt(const Schedule& sched, const Instance& inst, const std::filesystem::path& path);

}  // namespace espeed

#endif
