#pragma once

#include <iosfwd>
#include <string>

#include "backhaul/placement.hpp"

namespace backhaul {

// Placement record lines:
//   P <cbs_id> <controller_id> n=<n> ng=<..> na=<..> nl=<..>
//   R <cbs_id> <member_id> <wavelength per hop...> <path vertex ids...>
//   X <cbs_id>
// Placements (P followed by its R lines) first, then the infeasible ids.
void write_placement_records(std::ostream& out, const HeuristicResult& result);
std::string placement_records_string(const HeuristicResult& result);

// Round-trips the lines above. Route link ids are left empty (they are a
// function of the graph, which records do not carry).
HeuristicResult read_placement_records(std::istream& in);
HeuristicResult read_placement_records_file(const std::string& path);

}  // namespace backhaul
