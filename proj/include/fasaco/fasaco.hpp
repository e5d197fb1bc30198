#pragma once

#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fasaco/colony.hpp"
#include "fasaco/grid.hpp"
#include "fasaco/pheromone.hpp"
#include "fasaco/tour.hpp"

namespace fasaco {

/// A subset of the colony sharing one velocity.
struct Cohort {
    int velocity = 1;
    int ants = 0;
};

/// Assignment of velocities to cohorts. Constant runs the whole colony at one
/// velocity; Increasing/Decreasing sweep a contiguous range one cohort per
/// velocity; Custom lists (velocity, ant-count) pairs explicitly.
struct VelocitySchedule {
    enum class Kind { Constant, Increasing, Decreasing, Custom };

    Kind kind = Kind::Constant;
    int v_lo = 1;  // Constant: the velocity; ranges: the low end
    int v_hi = 1;
    std::vector<Cohort> custom;  // Custom only; ant counts are explicit

    static VelocitySchedule constant(int v) {
        check_velocity(v);
        return {Kind::Constant, v, v, {}};
    }
    static VelocitySchedule increasing(int v_min, int v_max) {
        check_velocity(v_min);
        if (v_max < v_min)
            throw std::invalid_argument("VelocitySchedule: increasing range must be ascending");
        return {Kind::Increasing, v_min, v_max, {}};
    }
    static VelocitySchedule decreasing(int v_max, int v_min) {
        check_velocity(v_min);
        if (v_max < v_min)
            throw std::invalid_argument("VelocitySchedule: decreasing range must be descending");
        return {Kind::Decreasing, v_min, v_max, {}};
    }
    static VelocitySchedule custom_counts(std::vector<Cohort> cohorts) {
        if (cohorts.empty())
            throw std::invalid_argument("VelocitySchedule: custom schedule needs cohorts");
        for (const Cohort& c : cohorts) {
            check_velocity(c.velocity);
            if (c.ants < 1)
                throw std::invalid_argument("VelocitySchedule: cohort ant count must be >= 1");
        }
        VelocitySchedule s;
        s.kind = Kind::Custom;
        s.custom = std::move(cohorts);
        return s;
    }

    int cohort_count() const {
        switch (kind) {
            case Kind::Constant: return 1;
            case Kind::Increasing:
            case Kind::Decreasing: return v_hi - v_lo + 1;
            case Kind::Custom: return static_cast<int>(custom.size());
        }
        return 0;
    }

    /// Cohort velocities in execution order.
    std::vector<int> velocities() const {
        std::vector<int> out;
        switch (kind) {
            case Kind::Constant: out.push_back(v_lo); break;
            case Kind::Increasing:
                for (int v = v_lo; v <= v_hi; ++v) out.push_back(v);
                break;
            case Kind::Decreasing:
                for (int v = v_hi; v >= v_lo; --v) out.push_back(v);
                break;
            case Kind::Custom:
                for (const Cohort& c : custom) out.push_back(c.velocity);
                break;
        }
        return out;
    }

    /// Canonical text form, the same syntax parse() accepts.
    std::string to_string() const {
        switch (kind) {
            case Kind::Constant: return "constant:" + std::to_string(v_lo);
            case Kind::Increasing:
                return "increasing:" + std::to_string(v_lo) + ".." + std::to_string(v_hi);
            case Kind::Decreasing:
                return "decreasing:" + std::to_string(v_hi) + ".." + std::to_string(v_lo);
            case Kind::Custom: {
                std::string out = "custom:";
                for (size_t k = 0; k < custom.size(); ++k) {
                    if (k) out += ',';
                    out += std::to_string(custom[k].velocity) + "x" +
                           std::to_string(custom[k].ants);
                }
                return out;
            }
        }
        return {};
    }

    /// Parses `constant:v`, `increasing:a..b`, `decreasing:b..a`, or
    /// `custom:v1xN1,v2xN2,...`.
    static VelocitySchedule parse(std::string_view text);

  private:
    static void check_velocity(int v) {
        if (v < 1) throw std::invalid_argument("VelocitySchedule: velocities must be >= 1");
    }
};

namespace detail {

inline int parse_int(std::string_view text, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument(std::string("VelocitySchedule: bad ") + what + " in '" +
                                    std::string(text) + "'");
    return value;
}

inline std::pair<int, int> parse_range(std::string_view text) {
    size_t dots = text.find("..");
    if (dots == std::string_view::npos)
        throw std::invalid_argument("VelocitySchedule: expected 'a..b' range in '" +
                                    std::string(text) + "'");
    return {parse_int(text.substr(0, dots), "range bound"),
            parse_int(text.substr(dots + 2), "range bound")};
}

}  // namespace detail

inline VelocitySchedule VelocitySchedule::parse(std::string_view text) {
    size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("VelocitySchedule: expected 'kind:spec', got '" +
                                    std::string(text) + "'");
    std::string_view kind = text.substr(0, colon);
    std::string_view spec = text.substr(colon + 1);
    if (kind == "constant") return constant(detail::parse_int(spec, "velocity"));
    if (kind == "increasing") {
        auto [a, b] = detail::parse_range(spec);
        return increasing(a, b);
    }
    if (kind == "decreasing") {
        auto [b, a] = detail::parse_range(spec);
        return decreasing(b, a);
    }
    if (kind == "custom") {
        std::vector<Cohort> cohorts;
        while (!spec.empty()) {
            size_t comma = spec.find(',');
            std::string_view item = spec.substr(0, comma);
            size_t x = item.find('x');
            if (x == std::string_view::npos)
                throw std::invalid_argument("VelocitySchedule: expected 'VxN', got '" +
                                            std::string(item) + "'");
            cohorts.push_back({detail::parse_int(item.substr(0, x), "velocity"),
                               detail::parse_int(item.substr(x + 1), "ant count")});
            spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        }
        return custom_counts(std::move(cohorts));
    }
    throw std::invalid_argument("VelocitySchedule: unknown kind '" + std::string(kind) + "'");
}

/// Splits K ants over the schedule's cohorts: sizes as equal as possible with
/// the remainder going to the earliest cohorts. Custom schedules carry their
/// own counts, which must sum to K.
inline std::vector<Cohort> split_cohorts(int K, const VelocitySchedule& schedule) {
    if (K < 1) throw std::invalid_argument("split_cohorts: K must be >= 1");
    if (schedule.kind == VelocitySchedule::Kind::Custom) {
        int total = 0;
        for (const Cohort& c : schedule.custom) total += c.ants;
        if (total != K)
            throw std::invalid_argument("split_cohorts: custom cohort sizes sum to " +
                                        std::to_string(total) + ", expected " + std::to_string(K));
        return schedule.custom;
    }
    std::vector<int> vs = schedule.velocities();
    const int C = static_cast<int>(vs.size());
    if (K < C)
        throw std::invalid_argument("split_cohorts: K=" + std::to_string(K) + " < " +
                                    std::to_string(C) + " cohorts");
    std::vector<Cohort> out(vs.size());
    const int base = K / C, rem = K % C;
    for (int c = 0; c < C; ++c) out[c] = {vs[c], base + (c < rem ? 1 : 0)};
    return out;
}

/// One multi-cell move: every cell actually entered, in order.
struct FastMove {
    Direction direction = Direction::Up;
    int requested_velocity = 1;
    std::vector<CellCoord> traversed;
    bool truncated = false;
};

/// Advances cell-by-cell from `from` up to v cells, stopping before the first
/// blocked or off-map cell. Returns nullopt when the very first cell is
/// blocked (the caller must pick another direction).
inline std::optional<FastMove> fast_move(const OccupancyGrid& grid, CellCoord from,
                                         Direction direction, int v) {
    if (v < 1) throw std::invalid_argument("fast_move: velocity must be >= 1");
    if (!grid.in_bounds(from) || !grid.traversable(from))
        throw std::domain_error("fast_move: origin cell is blocked or out of range");
    FastMove move;
    move.direction = direction;
    move.requested_velocity = v;
    CellCoord at = from;
    for (int k = 0; k < v; ++k) {
        CellCoord next = step(at, direction);
        if (!grid.in_bounds(next) || !grid.traversable(next)) break;
        move.traversed.push_back(next);
        at = next;
    }
    if (move.traversed.empty()) return std::nullopt;
    move.truncated = static_cast<int>(move.traversed.size()) < v;
    return move;
}

/// FaSACO main loop on an externally owned field: for each cohort, every ant
/// builds a full coverage tour at the cohort velocity; the best-so-far tour
/// receives the global deposit after each cohort. Returns the overall best
/// (fewest-steps) tour. With a Constant(1) schedule this consumes the RNG
/// exactly like run_aco and returns the identical tour.
inline Tour run_fasaco(const OccupancyGrid& grid, const SolverParams& params,
                       const VelocitySchedule& schedule, PheromoneField& field, Rng& rng,
                       CellCoord start) {
    params.validate();
    std::vector<Cohort> cohorts = split_cohorts(params.ants, schedule);
    detail::SearchScratch ws;
    const int reachable = detail::reachable_count(grid, start, ws);
    Tour best;
    for (int it = 0; it < params.iterations; ++it) {
        for (const Cohort& cohort : cohorts) {
            for (int k = 0; k < cohort.ants; ++k) {
                Tour t = detail::construct_tour_impl(grid, field, params, rng, start,
                                                     cohort.velocity, ws, reachable);
                if (best.empty() || t.steps() < best.steps()) best = std::move(t);
            }
            field.global_deposit(best, params.alpha, params.deposit_quality);
        }
    }
    return best;
}

inline Tour run_fasaco(const OccupancyGrid& grid, const SolverParams& params,
                       const VelocitySchedule& schedule, Rng& rng, CellCoord start) {
    PheromoneField field(grid, params.tau0);
    return run_fasaco(grid, params, schedule, field, rng, start);
}

}  // namespace fasaco
