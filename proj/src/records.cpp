#include "backhaul/records.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "backhaul/topology.hpp"

namespace backhaul {

void write_placement_records(std::ostream& out, const HeuristicResult& result) {
  for (const Placement& p : result.placements) {
    out << "P " << p.cbs_id << ' ' << p.controller << " n=" << format_double(p.cost.n)
        << " ng=" << p.cost.n_g << " na=" << p.cost.n_a << " nl=" << p.cost.n_l << '\n';
    for (const MemberRoute& route : p.assignment.routes) {
      out << "R " << p.cbs_id << ' ' << route.member;
      for (int w : route.wavelengths) out << ' ' << w;
      for (int v : route.vertices) out << ' ' << v;
      out << '\n';
    }
  }
  for (int id : result.infeasible) out << "X " << id << '\n';
}

std::string placement_records_string(const HeuristicResult& result) {
  std::ostringstream out;
  write_placement_records(out, result);
  return out.str();
}

HeuristicResult read_placement_records(std::istream& in) {
  HeuristicResult result;
  std::map<int, std::size_t> index;  // cbs id -> position in result.placements
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == '#') continue;
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("placement records line " + std::to_string(line_no) + ": " +
                                  what);
    };
    if (tag == "P") {
      Placement p;
      std::string n_field, ng_field, na_field, nl_field;
      if (!(fields >> p.cbs_id >> p.controller >> n_field >> ng_field >> na_field >> nl_field)) {
        fail("malformed P line");
      }
      auto strip = [&](std::string field, const char* prefix) {
        const std::string want = std::string(prefix) + "=";
        if (field.rfind(want, 0) != 0) fail("expected " + want + "...");
        return field.substr(want.size());
      };
      p.cost.n = parse_double(strip(n_field, "n"));
      p.cost.n_g = static_cast<int>(parse_double(strip(ng_field, "ng")));
      p.cost.n_a = static_cast<int>(parse_double(strip(na_field, "na")));
      p.cost.n_l = static_cast<int>(parse_double(strip(nl_field, "nl")));
      if (index.count(p.cbs_id)) fail("duplicate P line for cbs " + std::to_string(p.cbs_id));
      index[p.cbs_id] = result.placements.size();
      result.placements.push_back(std::move(p));
    } else if (tag == "R") {
      int cbs_id, member;
      if (!(fields >> cbs_id >> member)) fail("malformed R line");
      auto it = index.find(cbs_id);
      if (it == index.end()) fail("R line before its P line");
      std::vector<int> numbers;
      int value;
      while (fields >> value) numbers.push_back(value);
      if (numbers.size() % 2 != 1) fail("R line needs k wavelengths and k+1 vertices");
      const std::size_t hops = numbers.size() / 2;
      MemberRoute route;
      route.member = member;
      route.wavelengths.assign(numbers.begin(), numbers.begin() + hops);
      route.vertices.assign(numbers.begin() + hops, numbers.end());
      result.placements[it->second].assignment.routes.push_back(std::move(route));
    } else if (tag == "X") {
      int cbs_id;
      if (!(fields >> cbs_id)) fail("malformed X line");
      result.infeasible.push_back(cbs_id);
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  return result;
}

HeuristicResult read_placement_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open placement records: " + path);
  return read_placement_records(in);
}

}  // namespace backhaul
