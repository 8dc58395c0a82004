#ifndef SBUC_INSTANCE_HPP
#define SBUC_INSTANCE_HPP

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbuc/core.hpp"

namespace sbuc {

struct InitialState {
    std::vector<int> history;  // oldest first; history.back() is y_0
    double x0 = 0;

    int y_at(int t) const {  // t <= 0
        const int idx = static_cast<int>(history.size()) - 1 + t;
        if (idx < 0 || idx >= static_cast<int>(history.size())) throw std::out_of_range("initial history too short");
        return history[idx];
    }
    int y0() const { return history.empty() ? 0 : history.back(); }
};

struct GeneratorUnit {
    std::string name;
    GeneratorParams params;
    CostParams costs;
    std::string bus;
    InitialState initial;
};

struct Bus {
    std::string id;
    std::vector<double> load;
};

struct Line {
    std::string id;
    double capacity = 0;
    std::map<std::string, double> factors;  // bus id -> K
};

struct UcInstance {
    std::string name;
    int horizon = 0;
    std::vector<double> reserve;
    std::vector<Bus> buses;
    std::vector<Line> lines;
    std::vector<GeneratorUnit> generators;

    std::vector<double> system_load() const {
        std::vector<double> d(horizon, 0.0);
        for (const auto& b : buses)
            for (int t = 0; t < horizon && t < static_cast<int>(b.load.size()); ++t) d[t] += b.load[t];
        return d;
    }
    double total_capacity() const {
        double s = 0;
        for (const auto& g : generators) s += g.params.cap_max;
        return s;
    }
};

inline InitialState default_initial(const GeneratorParams& p) {
    return {std::vector<int>(std::max(p.min_up, p.min_down), 0), 0.0};
}

// Rows of the min-up/min-down system that involve only history entries; returns an empty string when consistent.
inline std::string check_history(const GeneratorParams& p, const InitialState& init) {
    const int need = std::max(p.min_up, p.min_down);
    if (static_cast<int>(init.history.size()) < need) return "history shorter than max(min_up, min_down)";
    for (int v : init.history)
        if (v != 0 && v != 1) return "history entries must be 0 or 1";
    for (int t = -p.min_up + 2; t <= 0; ++t)
        for (int k = t; k <= 0; ++k)
            if (-init.y_at(t - 1) + init.y_at(t) - init.y_at(k) > 0) return "history violates minimum up time";
    for (int t = -p.min_down + 2; t <= 0; ++t)
        for (int k = t; k <= 0; ++k)
            if (init.y_at(t - 1) - init.y_at(t) + init.y_at(k) > 1) return "history violates minimum down time";
    if (init.y0() == 0 && init.x0 != 0) return "x0 must be 0 when the unit is off at time 0";
    if (init.y0() == 1 && (init.x0 < p.cap_min || init.x0 > p.cap_max)) return "x0 outside [cap_min, cap_max]";
    return {};
}

// Structural problems with an instance, each prefixed by its location.
inline std::vector<std::string> validate_instance(const UcInstance& inst) {
    std::vector<std::string> errs;
    const int T = inst.horizon;
    if (T < 1) errs.push_back("horizon: must be >= 1");
    if (static_cast<int>(inst.reserve.size()) != T) errs.push_back("reserve: length must equal horizon");
    for (double r : inst.reserve)
        if (r < 0) errs.push_back("reserve: negative entry");
    std::map<std::string, int> bus_index;
    for (std::size_t b = 0; b < inst.buses.size(); ++b) {
        const auto& bus = inst.buses[b];
        std::string where = "buses[" + std::to_string(b) + "]";
        if (!bus_index.emplace(bus.id, static_cast<int>(b)).second) errs.push_back(where + ".id: duplicate");
        if (static_cast<int>(bus.load.size()) != T) errs.push_back(where + ".load: length must equal horizon");
        for (double d : bus.load)
            if (d < 0) errs.push_back(where + ".load: negative entry");
    }
    for (std::size_t e = 0; e < inst.lines.size(); ++e) {
        const auto& ln = inst.lines[e];
        std::string where = "lines[" + std::to_string(e) + "]";
        if (ln.capacity < 0) errs.push_back(where + ".capacity: negative");
        for (const auto& [b, k] : ln.factors) {
            if (!bus_index.count(b)) errs.push_back(where + ".factors: unknown bus " + b);
            if (k < 0) errs.push_back(where + ".factors: negative factor");
        }
    }
    for (std::size_t g = 0; g < inst.generators.size(); ++g) {
        const auto& gen = inst.generators[g];
        std::string where = "generators[" + std::to_string(g) + "]";
        if (!bus_index.count(gen.bus)) errs.push_back(where + ".bus: unknown bus " + gen.bus);
        for (const auto& v : validate_generator(gen.params).violations) errs.push_back(where + ".params: " + v);
        for (const auto& v : validate_costs(gen.costs, gen.params).violations) errs.push_back(where + ".costs: " + v);
        if (validate_generator(gen.params).ok()) {
            auto h = check_history(gen.params, gen.initial);
            if (!h.empty()) errs.push_back(where + ".initial: " + h);
        }
    }
    return errs;
}

// ---- embedded data ----

struct GeneratorType {
    GeneratorParams params;
    CostParams costs;
};

inline GeneratorType generator_type(int i) {
    // C̄, C̲, L, l, V, V̄ | a, b, c, phi, psi
    static const std::array<GeneratorType, 8> rows = {{
        {{455, 150, 8, 8, 91, 180}, {0.00048, 16.19, 1000, 2000, 2000}},
        {{455, 150, 8, 8, 91, 180}, {0.00031, 17.26, 970, 2000, 2000}},
        {{130, 20, 5, 5, 26, 35}, {0.00200, 16.6, 700, 500, 500}},
        {{130, 20, 5, 5, 26, 35}, {0.00211, 16.5, 680, 500, 500}},
        {{162, 25, 6, 6, 32.4, 40}, {0.00398, 19.7, 450, 700, 700}},
        {{80, 20, 3, 3, 16, 28}, {0.00712, 22.26, 370, 150, 150}},
        {{85, 25, 3, 3, 17, 33}, {0.00079, 27.74, 480, 200, 200}},
        {{55, 10, 1, 1, 11, 15}, {0.00413, 25.92, 660, 60, 60}},
    }};
    if (i < 1 || i > 8) throw std::out_of_range("generator_type: index must be in [1, 8]");
    return rows[i - 1];
}

// Hourly demand as a fraction of total installed capacity.
inline const std::array<double, 24>& builtin_load_profile() {
    static const std::array<double, 24> p = {0.71, 0.65, 0.62, 0.60, 0.58, 0.58, 0.60, 0.64, 0.73, 0.80, 0.82, 0.83,
                                             0.82, 0.80, 0.79, 0.79, 0.83, 0.91, 0.90, 0.88, 0.85, 0.84, 0.79, 0.74};
    return p;
}

// Number of units of each type (1..8) in the twenty benchmark compositions.
inline const std::array<std::array<int, 8>, 20>& experiment1_compositions() {
    static const std::array<std::array<int, 8>, 20> c = {{
        {12, 11, 0, 0, 1, 4, 0, 0},   {13, 15, 2, 0, 4, 0, 0, 1},    {15, 13, 2, 6, 3, 1, 1, 3},
        {15, 11, 0, 1, 4, 5, 6, 3},   {15, 13, 3, 7, 5, 3, 2, 1},    {10, 10, 2, 5, 7, 5, 6, 5},
        {17, 16, 1, 3, 1, 7, 2, 4},   {17, 10, 6, 5, 2, 1, 3, 7},    {12, 17, 4, 7, 5, 2, 0, 5},
        {13, 12, 5, 7, 2, 5, 4, 6},   {46, 45, 8, 0, 5, 0, 12, 16},  {40, 54, 14, 8, 3, 15, 9, 13},
        {50, 41, 19, 11, 4, 4, 12, 15}, {51, 58, 17, 19, 16, 1, 2, 1}, {43, 46, 17, 15, 13, 15, 6, 12},
        {50, 59, 8, 15, 1, 18, 4, 17}, {53, 50, 17, 15, 16, 5, 14, 12}, {45, 57, 19, 7, 19, 19, 5, 11},
        {58, 50, 15, 7, 16, 18, 7, 12}, {55, 48, 18, 5, 18, 17, 15, 11},
    }};
    return c;
}

inline constexpr double kDefaultReserve = 0.03;

// How a builder sets each unit's state before period 1.
enum class InitialPolicy {
    AllOff,           // off for max(L, l) periods, x0 = 0
    OnAtFirstLoad,    // on for max(L, l) periods, x0 = capacity share of the first-period load
};

inline void apply_initial_policy(UcInstance& inst, InitialPolicy pol) {
    const double cap = inst.total_capacity();
    const double d1 = inst.horizon > 0 ? inst.system_load()[0] : 0.0;
    for (auto& g : inst.generators) {
        const auto& p = g.params;
        const int len = std::max(p.min_up, p.min_down);
        if (pol == InitialPolicy::AllOff || cap <= 0) {
            g.initial = default_initial(p);
        } else {
            double share = d1 * p.cap_max / cap;
            g.initial = {std::vector<int>(len, 1), std::clamp(share, p.cap_min, p.cap_max)};
        }
    }
}

inline UcInstance experiment1_instance(int i, InitialPolicy pol = InitialPolicy::AllOff) {
    if (i < 1 || i > 20) throw std::out_of_range("experiment1_instance: index must be in [1, 20]");
    UcInstance inst;
    inst.name = "exp1-" + std::to_string(i);
    inst.horizon = 24;
    inst.reserve.assign(24, kDefaultReserve);
    const auto& comp = experiment1_compositions()[i - 1];
    for (int type = 1; type <= 8; ++type)
        for (int n = 0; n < comp[type - 1]; ++n) {
            auto gt = generator_type(type);
            GeneratorUnit g{"type" + std::to_string(type) + "-" + std::to_string(n + 1), gt.params, gt.costs, "1",
                            default_initial(gt.params)};
            inst.generators.push_back(std::move(g));
        }
    const double cap = inst.total_capacity();
    Bus b{"1", {}};
    for (double f : builtin_load_profile()) b.load.push_back(f * cap);
    inst.buses.push_back(std::move(b));
    apply_initial_policy(inst, pol);
    return inst;
}

struct RandomInstanceSpec {
    std::uint64_t seed = 1;
    std::vector<int> generator_types;  // generator_type() index per unit, 1..8
    int buses = 1;
    int lines = 0;
    int horizon = 24;
    std::vector<double> profile;       // length horizon; empty -> builtin profile (tiled)
    double reserve = kDefaultReserve;
    double peak_lo = 0.5, peak_hi = 1.0;  // peak as a fraction of total capacity
    InitialPolicy initial = InitialPolicy::AllOff;
};

// Peak ~ U[peak_lo, peak_hi] * total capacity, split over buses by random base loads, shaped by the profile
// normalized so its maximum is 1. Line factors are nonnegative and sum to 1 across buses.
inline UcInstance random_instance(const RandomInstanceSpec& spec) {
    if (spec.generator_types.empty() || spec.buses < 1 || spec.horizon < 1 || spec.lines < 0)
        throw std::invalid_argument("random_instance: sizes must be positive");
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    UcInstance inst;
    inst.name = "random-" + std::to_string(spec.seed);
    inst.horizon = spec.horizon;
    inst.reserve.assign(spec.horizon, spec.reserve);

    std::vector<double> profile = spec.profile;
    if (profile.empty())
        for (int t = 0; t < spec.horizon; ++t) profile.push_back(builtin_load_profile()[t % 24]);
    if (static_cast<int>(profile.size()) != spec.horizon) throw std::invalid_argument("random_instance: profile length must equal T");
    const double pmax = *std::max_element(profile.begin(), profile.end());

    for (int b = 0; b < spec.buses; ++b) inst.buses.push_back({std::to_string(b + 1), {}});
    for (std::size_t g = 0; g < spec.generator_types.size(); ++g) {
        auto gt = generator_type(spec.generator_types[g]);
        std::string bus = std::to_string(1 + static_cast<int>(unit(rng) * spec.buses) % spec.buses);
        inst.generators.push_back({"g" + std::to_string(g + 1) + "-type" + std::to_string(spec.generator_types[g]), gt.params,
                                   gt.costs, bus, default_initial(gt.params)});
    }
    const double cap = inst.total_capacity();
    const double peak = cap * (spec.peak_lo + (spec.peak_hi - spec.peak_lo) * unit(rng));
    std::vector<double> base(spec.buses);
    for (auto& w : base) w = 0.5 + unit(rng);
    const double wsum = std::accumulate(base.begin(), base.end(), 0.0);
    for (int b = 0; b < spec.buses; ++b)
        for (int t = 0; t < spec.horizon; ++t) inst.buses[b].load.push_back(peak * profile[t] / pmax * base[b] / wsum);

    for (int e = 0; e < spec.lines; ++e) {
        Line ln{std::to_string(e + 1), 0.0, {}};
        std::vector<double> k(spec.buses);
        for (auto& v : k) v = unit(rng);
        const double ks = std::accumulate(k.begin(), k.end(), 0.0);
        for (int b = 0; b < spec.buses; ++b)
            if (ks > 0) ln.factors[inst.buses[b].id] = k[b] / ks;
        ln.capacity = peak * (0.3 + 0.3 * unit(rng));
        inst.lines.push_back(std::move(ln));
    }
    apply_initial_policy(inst, spec.initial);
    return inst;
}

// ---- JSON I/O ----

class InstanceFormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw InstanceFormatError(path + (path.empty() ? "" : ".") + key + ": missing");
    return j.at(key);
}

inline double number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) throw InstanceFormatError(path + ": expected a number");
    return j.get<double>();
}

inline int integer(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InstanceFormatError(path + ": expected an integer");
    return j.get<int>();
}

inline std::string id_string(const nlohmann::json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    throw InstanceFormatError(path + ": expected a string or integer id");
}

inline std::vector<double> numbers(const nlohmann::json& j, const std::string& path) {
    if (!j.is_array()) throw InstanceFormatError(path + ": expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

}  // namespace detail

inline UcInstance instance_from_json(const nlohmann::json& j) {
    using detail::field;
    UcInstance inst;
    if (!j.is_object()) throw InstanceFormatError("document: expected an object");
    if (j.contains("name") && j["name"].is_string()) inst.name = j["name"].get<std::string>();
    inst.horizon = detail::integer(field(j, "horizon", ""), "horizon");
    inst.reserve = detail::numbers(field(j, "reserve", ""), "reserve");
    const auto& buses = field(j, "buses", "");
    if (!buses.is_array()) throw InstanceFormatError("buses: expected an array");
    for (std::size_t b = 0; b < buses.size(); ++b) {
        std::string p = "buses[" + std::to_string(b) + "]";
        inst.buses.push_back({detail::id_string(field(buses[b], "id", p), p + ".id"), detail::numbers(field(buses[b], "load", p), p + ".load")});
    }
    if (j.contains("lines")) {
        const auto& lines = j["lines"];
        if (!lines.is_array()) throw InstanceFormatError("lines: expected an array");
        for (std::size_t e = 0; e < lines.size(); ++e) {
            std::string p = "lines[" + std::to_string(e) + "]";
            Line ln;
            ln.id = detail::id_string(field(lines[e], "id", p), p + ".id");
            ln.capacity = detail::number(field(lines[e], "capacity", p), p + ".capacity");
            const auto& f = field(lines[e], "factors", p);
            if (!f.is_object()) throw InstanceFormatError(p + ".factors: expected an object");
            for (auto it = f.begin(); it != f.end(); ++it) ln.factors[it.key()] = detail::number(it.value(), p + ".factors." + it.key());
            inst.lines.push_back(std::move(ln));
        }
    }
    const auto& gens = field(j, "generators", "");
    if (!gens.is_array()) throw InstanceFormatError("generators: expected an array");
    for (std::size_t g = 0; g < gens.size(); ++g) {
        std::string p = "generators[" + std::to_string(g) + "]";
        const auto& jg = gens[g];
        GeneratorUnit u;
        if (jg.contains("name") && jg["name"].is_string()) u.name = jg["name"].get<std::string>();
        u.bus = detail::id_string(field(jg, "bus", p), p + ".bus");
        const auto& jp = field(jg, "params", p);
        std::string pp = p + ".params";
        u.params.cap_max = detail::number(field(jp, "cap_max", pp), pp + ".cap_max");
        u.params.cap_min = detail::number(field(jp, "cap_min", pp), pp + ".cap_min");
        u.params.min_up = detail::integer(field(jp, "min_up", pp), pp + ".min_up");
        u.params.min_down = detail::integer(field(jp, "min_down", pp), pp + ".min_down");
        u.params.ramp = detail::number(field(jp, "ramp", pp), pp + ".ramp");
        u.params.start_ramp = detail::number(field(jp, "start_ramp", pp), pp + ".start_ramp");
        const auto& jc = field(jg, "costs", p);
        std::string cp = p + ".costs";
        u.costs.quad = detail::number(field(jc, "quad", cp), cp + ".quad");
        u.costs.lin = detail::number(field(jc, "lin", cp), cp + ".lin");
        u.costs.fixed_on = detail::number(field(jc, "fixed_on", cp), cp + ".fixed_on");
        u.costs.startup = detail::number(field(jc, "startup", cp), cp + ".startup");
        u.costs.shutdown = detail::number(field(jc, "shutdown", cp), cp + ".shutdown");
        if (jg.contains("initial")) {
            const auto& ji = jg["initial"];
            std::string ip = p + ".initial";
            const auto& h = field(ji, "history", ip);
            if (!h.is_array()) throw InstanceFormatError(ip + ".history: expected an array");
            for (std::size_t i = 0; i < h.size(); ++i) u.initial.history.push_back(detail::integer(h[i], ip + ".history[" + std::to_string(i) + "]"));
            u.initial.x0 = detail::number(field(ji, "x0", ip), ip + ".x0");
        } else {
            u.initial = default_initial(u.params);
        }
        inst.generators.push_back(std::move(u));
    }
    return inst;
}

inline nlohmann::json instance_to_json(const UcInstance& inst) {
    nlohmann::json j;
    j["name"] = inst.name;
    j["horizon"] = inst.horizon;
    j["reserve"] = inst.reserve;
    j["buses"] = nlohmann::json::array();
    for (const auto& b : inst.buses) j["buses"].push_back({{"id", b.id}, {"load", b.load}});
    j["lines"] = nlohmann::json::array();
    for (const auto& ln : inst.lines) {
        nlohmann::json f = nlohmann::json::object();
        for (const auto& [b, k] : ln.factors) f[b] = k;
        j["lines"].push_back({{"id", ln.id}, {"capacity", ln.capacity}, {"factors", f}});
    }
    j["generators"] = nlohmann::json::array();
    for (const auto& g : inst.generators) {
        const auto& p = g.params;
        const auto& c = g.costs;
        j["generators"].push_back({
            {"name", g.name},
            {"bus", g.bus},
            {"params", {{"cap_max", p.cap_max}, {"cap_min", p.cap_min}, {"min_up", p.min_up}, {"min_down", p.min_down},
                        {"ramp", p.ramp}, {"start_ramp", p.start_ramp}}},
            {"costs", {{"quad", c.quad}, {"lin", c.lin}, {"fixed_on", c.fixed_on}, {"startup", c.startup}, {"shutdown", c.shutdown}}},
            {"initial", {{"history", g.initial.history}, {"x0", g.initial.x0}}},
        });
    }
    return j;
}

inline UcInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open instance file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InstanceFormatError(std::string("document: ") + e.what());
    }
    return instance_from_json(j);
}

inline void write_instance(const UcInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write instance file: " + path);
    out << instance_to_json(inst).dump(2) << '\n';
}

inline bool operator==(const InitialState& a, const InitialState& b) { return a.history == b.history && a.x0 == b.x0; }
inline bool operator==(const GeneratorParams& a, const GeneratorParams& b) {
    return a.cap_max == b.cap_max && a.cap_min == b.cap_min && a.min_up == b.min_up && a.min_down == b.min_down &&
           a.ramp == b.ramp && a.start_ramp == b.start_ramp;
}
inline bool operator==(const CostParams& a, const CostParams& b) {
    return a.quad == b.quad && a.lin == b.lin && a.fixed_on == b.fixed_on && a.startup == b.startup && a.shutdown == b.shutdown;
}
inline bool operator==(const GeneratorUnit& a, const GeneratorUnit& b) {
    return a.name == b.name && a.params == b.params && a.costs == b.costs && a.bus == b.bus && a.initial == b.initial;
}
inline bool operator==(const Bus& a, const Bus& b) { return a.id == b.id && a.load == b.load; }
inline bool operator==(const Line& a, const Line& b) { return a.id == b.id && a.capacity == b.capacity && a.factors == b.factors; }
inline bool operator==(const UcInstance& a, const UcInstance& b) {
    return a.name == b.name && a.horizon == b.horizon && a.reserve == b.reserve && a.buses == b.buses && a.lines == b.lines &&
           a.generators == b.generators;
}

}  // namespace sbuc

#endif
