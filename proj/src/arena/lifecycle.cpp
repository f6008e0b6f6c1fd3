#include <algorithm>
#include <array>

#include "microlab/arena/arena.hpp"

namespace microlab {
namespace {

class Occupancy {
public:
  Occupancy(std::size_t width, std::size_t height)
      : width_(width), height_(height), taken_(width * height, false) {}

  bool taken(int x, int y) const { return taken_[index(x, y)]; }
  void set(int x, int y, bool value) { taken_[index(x, y)] = value; }

  /// Empty 8-neighbours of (x, y), in fixed (dy, dx) order.
  std::vector<std::array<int, 2>> empty_neighbours(int x, int y) const {
    std::vector<std::array<int, 2>> out;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int nx = x + dx;
        const int ny = y + dy;
        if (nx < 1 || ny < 1 || nx > static_cast<int>(width_) || ny > static_cast<int>(height_))
          continue;
        if (!taken(nx, ny)) out.push_back({nx, ny});
      }
    }
    return out;
  }

private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y - 1) * width_ + static_cast<std::size_t>(x - 1);
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<bool> taken_;
};

void sort_scan_order(std::vector<Agent>& agents) {
  std::sort(agents.begin(), agents.end(), [](const Agent& a, const Agent& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
}

}  // namespace

LifecycleReport apply_agent_lifecycle(Arena& arena) {
  LifecycleReport report;
  const LifecycleParams& p = arena.lifecycle;
  Occupancy occupancy(arena.width, arena.height);
  for (const auto& a : arena.agents) occupancy.set(a.x, a.y, true);

  std::vector<Agent> survivors;
  std::vector<Agent> daughters;
  survivors.reserve(arena.agents.size());

  // Daughters placed during the scan are not visited until the next step.
  for (Agent& agent : arena.agents) {
    if (agent.biomass >= p.division_threshold) {
      const auto free = occupancy.empty_neighbours(agent.x, agent.y);
      if (free.empty()) {
        ++report.blocked_divisions;
      } else {
        const auto& target = free[uniform_index(arena.rng, free.size())];
        const double half = agent.biomass / 2.0;
        Agent daughter = agent;
        daughter.x = target[0];
        daughter.y = target[1];
        daughter.biomass = agent.biomass - half;
        daughter.starvation_steps = 0;
        agent.biomass = half;
        occupancy.set(daughter.x, daughter.y, true);
        daughters.push_back(std::move(daughter));
        ++report.divisions;
      }
      survivors.push_back(std::move(agent));
      continue;
    }

    if (agent.biomass < p.death_threshold || agent.starvation_steps >= p.starvation_limit) {
      occupancy.set(agent.x, agent.y, false);
      ++report.deaths;
      continue;
    }

    if (uniform_unit(arena.rng) < p.p_move) {
      const auto free = occupancy.empty_neighbours(agent.x, agent.y);
      if (!free.empty()) {
        const auto& target = free[uniform_index(arena.rng, free.size())];
        occupancy.set(agent.x, agent.y, false);
        agent.x = target[0];
        agent.y = target[1];
        occupancy.set(agent.x, agent.y, true);
        ++report.moves;
      }
    }
    survivors.push_back(std::move(agent));
  }

  survivors.insert(survivors.end(), std::make_move_iterator(daughters.begin()),
                   std::make_move_iterator(daughters.end()));
  sort_scan_order(survivors);
  arena.agents = std::move(survivors);
  return report;
}

}  // namespace microlab
