// SPDX-License-Identifier: Apache-2.0
//
// Assessment configuration: node power models, datacenter parameters, grid
// profile, embodied-impact factors and component specifications, with JSON
// load/save and the built-in reference cluster (an H100 cluster in France).
#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecotally/units.hpp"

namespace ecotally {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PowerComponentKind : unsigned char { Gpu, Cpu, Ram, Other };
inline constexpr PowerComponentKind kAllPowerComponents[] = {
    PowerComponentKind::Gpu, PowerComponentKind::Cpu, PowerComponentKind::Ram,
    PowerComponentKind::Other};

inline std::string_view to_string(PowerComponentKind k) {
    switch (k) {
        case PowerComponentKind::Gpu: return "gpu";
        case PowerComponentKind::Cpu: return "cpu";
        case PowerComponentKind::Ram: return "ram";
        case PowerComponentKind::Other: return "other";
    }
    return "?";
}

// Per-component electrical model: either utilization-scaled TDP or constant
// draw. "Derived" resolves to a constant at config load, soaking up the
// node-total power left over by the explicitly modeled components.
struct PowerModel {
    enum class Mode : unsigned char { UtilizationScaled, Constant, Derived };

    PowerComponentKind kind = PowerComponentKind::Other;
    int quantity = 1;
    Mode mode = Mode::Constant;
    double tdp_w = 0.0;        // UtilizationScaled
    double utilization = 0.0;  // UtilizationScaled
    double watts = 0.0;        // Constant; filled at load for Derived

    // Average electrical draw of one unit, in watts.
    double unit_watts() const {
        return mode == Mode::UtilizationScaled ? utilization * tdp_w : watts;
    }

    void validate() const {
        if (quantity < 1) throw ConfigError("power model: quantity must be >= 1");
        if (mode == Mode::UtilizationScaled) {
            if (!(tdp_w > 0)) throw ConfigError("power model: TDP must be > 0");
            if (!(utilization >= 0.0 && utilization <= 1.0))
                throw ConfigError("power model: utilization must be in [0, 1]");
        } else if (!(watts >= 0)) {
            throw ConfigError("power model: watts must be >= 0");
        }
    }

    friend bool operator==(const PowerModel&, const PowerModel&) = default;
};

struct DatacenterParams {
    double pue = 1.25;
    double wue_l_per_kwh = 0.25;
    double o_cluster = 1.11;

    void validate() const {
        if (!(pue >= 1.0)) throw ConfigError("datacenter: PUE must be >= 1");
        if (!(wue_l_per_kwh >= 0.0)) throw ConfigError("datacenter: WUE must be >= 0");
        if (!(o_cluster >= 1.0)) throw ConfigError("datacenter: o_cluster must be >= 1");
    }

    friend bool operator==(const DatacenterParams&, const DatacenterParams&) = default;
};

struct GridProfile {
    std::string name;
    double ci_g_per_kwh = 0.0;         // carbon intensity, gCO2eq/kWh
    double ewif_l_per_kwh = 0.0;       // water intensity of generation, L/kWh
    double adpf_mj_per_kwh = 0.0;      // fossil depletion expressed as MJ/kWh
    double adpe_kgsbeq_per_kwh = 0.0;  // element depletion, kgSbeq/kWh
    double renewable_share = 0.0;      // fraction of renewables in the mix
    std::map<std::string, double> energy_mix;  // optional source -> share

    void validate() const {
        if (!(ci_g_per_kwh >= 0)) throw ConfigError("grid: carbon intensity must be >= 0");
        if (!(ewif_l_per_kwh >= 0)) throw ConfigError("grid: EWIF must be >= 0");
        if (!(adpf_mj_per_kwh >= 0) || !(adpe_kgsbeq_per_kwh >= 0))
            throw ConfigError("grid: depletion factors must be >= 0");
        if (!(renewable_share >= 0.0) || renewable_share >= 1.0)
            throw ConfigError("grid: renewable share must be in [0, 1)");
        if (!energy_mix.empty()) {
            double sum = 0.0;
            for (const auto& [src, share] : energy_mix) {
                if (!(share >= 0)) throw ConfigError("grid: mix share for '" + src + "' < 0");
                sum += share;
            }
            if (std::abs(sum - 1.0) > 1e-6)
                throw ConfigError("grid: energy mix shares must sum to 1");
        }
    }

    friend bool operator==(const GridProfile&, const GridProfile&) = default;
};

enum class ComponentFamily : unsigned char {
    Gpu,
    Cpu,
    Ram,
    Ssd,
    Psu,
    Motherboard,
    Case,
    Assembly,
};
inline constexpr ComponentFamily kAllComponentFamilies[] = {
    ComponentFamily::Gpu,  ComponentFamily::Cpu,         ComponentFamily::Ram,
    ComponentFamily::Ssd,  ComponentFamily::Psu,         ComponentFamily::Motherboard,
    ComponentFamily::Case, ComponentFamily::Assembly};

inline std::string_view to_string(ComponentFamily f) {
    switch (f) {
        case ComponentFamily::Gpu: return "gpu";
        case ComponentFamily::Cpu: return "cpu";
        case ComponentFamily::Ram: return "ram";
        case ComponentFamily::Ssd: return "ssd";
        case ComponentFamily::Psu: return "psu";
        case ComponentFamily::Motherboard: return "motherboard";
        case ComponentFamily::Case: return "case";
        case ComponentFamily::Assembly: return "assembly";
    }
    return "?";
}

// One production-impact figure per indicator.
struct ImpactFactors {
    double pe_mj = 0.0;
    double gwp_kgco2eq = 0.0;
    double adp_kgsbeq = 0.0;

    friend bool operator==(const ImpactFactors&, const ImpactFactors&) = default;
};

// Production factors for one component family. "base" is per unit (per kg
// for PSUs); "die" is per cm2 of silicon for CPU/RAM/SSD and unused for the
// constant-impact families (GPU, motherboard, case, assembly).
struct FamilyFactors {
    ImpactFactors base;
    ImpactFactors die;
    AdpBasis adp_basis = AdpBasis::ElementsAndFossil;

    friend bool operator==(const FamilyFactors&, const FamilyFactors&) = default;
};

struct ComponentSpec {
    std::string name;  // distinguishes e.g. the two SSD models
    ComponentFamily family = ComponentFamily::Assembly;
    int quantity_per_node = 1;
    double die_size_cm2 = 0.0;         // CPU
    double capacity_gb = 0.0;          // RAM/SSD (GPU VRAM carried for reference)
    double density_gb_per_cm2 = 0.0;   // RAM/SSD
    double weight_kg = 0.0;            // PSU

    void validate() const {
        if (name.empty()) throw ConfigError("component: name must be non-empty");
        if (quantity_per_node < 1)
            throw ConfigError("component '" + name + "': quantity must be >= 1");
        switch (family) {
            case ComponentFamily::Cpu:
                if (!(die_size_cm2 > 0))
                    throw ConfigError("component '" + name + "': die_size_cm2 required");
                break;
            case ComponentFamily::Ram:
            case ComponentFamily::Ssd:
                if (!(capacity_gb > 0) || !(density_gb_per_cm2 > 0))
                    throw ConfigError("component '" + name +
                                      "': capacity_gb and density_gb_per_cm2 required");
                break;
            case ComponentFamily::Psu:
                if (!(weight_kg > 0))
                    throw ConfigError("component '" + name + "': weight_kg required");
                break;
            default:
                break;
        }
    }

    friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

struct AllocationParams {
    double lifespan_hours = 4 * 8760.0;  // four years
    double utilization_rate = 0.6;

    // Hours of useful service a hardware lifetime provides.
    double allocated_hours() const { return lifespan_hours * utilization_rate; }

    void validate() const {
        if (!(lifespan_hours > 0)) throw ConfigError("allocation: lifespan must be > 0");
        if (!(utilization_rate > 0.0 && utilization_rate <= 1.0))
            throw ConfigError("allocation: utilization rate must be in (0, 1]");
    }

    friend bool operator==(const AllocationParams&, const AllocationParams&) = default;
};

struct AssessmentConfig {
    std::string name;
    double compute_gpu_hours = 3'256'263.0;  // project default when no log is given
    std::optional<double> node_total_power_w;
    std::vector<PowerModel> node_power;
    DatacenterParams datacenter;
    GridProfile grid;
    AllocationParams allocation;
    std::map<ComponentFamily, FamilyFactors> factors;
    std::vector<ComponentSpec> components;

    const PowerModel* find_power(PowerComponentKind k) const {
        for (const PowerModel& m : node_power)
            if (m.kind == k) return &m;
        return nullptr;
    }

    int gpus_per_node() const {
        const PowerModel* gpu = find_power(PowerComponentKind::Gpu);
        if (!gpu) throw ConfigError("config: no GPU power model");
        return gpu->quantity;
    }

    // Resolves derived power draws and checks every cross-field invariant.
    // Must run once after construction or parsing, before any assessment.
    void finalize() {
        if (!(compute_gpu_hours >= 0) || !std::isfinite(compute_gpu_hours))
            throw ConfigError("config: compute_gpu_hours must be finite and >= 0");
        datacenter.validate();
        grid.validate();
        allocation.validate();

        int seen[4] = {0, 0, 0, 0};
        for (PowerModel& m : node_power) {
            if (m.mode != PowerModel::Mode::Derived) m.validate();
            seen[static_cast<int>(m.kind)] += 1;
        }
        for (PowerComponentKind k : kAllPowerComponents) {
            if (seen[static_cast<int>(k)] != 1)
                throw ConfigError(std::string("config: need exactly one power model for '") +
                                  std::string(to_string(k)) + "'");
        }
        for (PowerModel& m : node_power) {
            if (m.mode != PowerModel::Mode::Derived) continue;
            if (!node_total_power_w)
                throw ConfigError("config: derived power requires node.total_power_w");
            double rest = 0.0;
            for (const PowerModel& o : node_power) {
                if (o.mode == PowerModel::Mode::Derived) {
                    if (&o != &m)
                        throw ConfigError("config: only one component may derive its power");
                    continue;
                }
                // Residual is taken off rated (not utilization-scaled) chip
                // power plus constant draws, matching the node power budget.
                double unit = o.mode == PowerModel::Mode::UtilizationScaled ? o.tdp_w : o.watts;
                rest += unit * o.quantity;
            }
            double residual = *node_total_power_w - rest;
            if (!(residual > 0))
                throw ConfigError("config: derived power is not positive; check node totals");
            m.watts = residual / m.quantity;
            m.validate();
        }

        for (const ComponentSpec& c : components) {
            c.validate();
            if (!factors.count(c.family))
                throw ConfigError("component '" + c.name + "': no factors for family '" +
                                  std::string(to_string(c.family)) + "'");
        }
    }

    friend bool operator==(const AssessmentConfig&, const AssessmentConfig&) = default;
};

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError(where + ": missing key '" + key + "'");
    return *it;
}

inline double require_number(const nlohmann::json& j, const char* key,
                             const std::string& where) {
    const nlohmann::json& v = require_key(j, key, where);
    if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
    return v.get<double>();
}

inline std::string require_string(const nlohmann::json& j, const char* key,
                                  const std::string& where) {
    const nlohmann::json& v = require_key(j, key, where);
    if (!v.is_string()) throw ConfigError(where + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

template <typename Kind, std::size_t N>
Kind kind_from_name(const std::string& s, const Kind (&all)[N], const std::string& where) {
    for (Kind k : all)
        if (to_string(k) == s) return k;
    throw ConfigError(where + ": unknown name '" + s + "'");
}

inline ImpactFactors factors_from_json(const nlohmann::json& j, const std::string& where) {
    ImpactFactors f;
    f.pe_mj = require_number(j, "pe_mj", where);
    f.gwp_kgco2eq = require_number(j, "gwp_kgco2eq", where);
    f.adp_kgsbeq = require_number(j, "adp_kgsbeq", where);
    return f;
}

inline nlohmann::json factors_to_json(const ImpactFactors& f) {
    return {{"pe_mj", f.pe_mj}, {"gwp_kgco2eq", f.gwp_kgco2eq}, {"adp_kgsbeq", f.adp_kgsbeq}};
}

inline GridProfile grid_from_json(const nlohmann::json& j, const std::string& where) {
    GridProfile g;
    g.name = require_string(j, "name", where);
    g.ci_g_per_kwh = require_number(j, "ci_g_per_kwh", where);
    g.ewif_l_per_kwh = require_number(j, "ewif_l_per_kwh", where);
    g.adpf_mj_per_kwh = j.value("adpf_mj_per_kwh", 0.0);
    g.adpe_kgsbeq_per_kwh = j.value("adpe_kgsbeq_per_kwh", 0.0);
    g.renewable_share = j.value("renewable_share", 0.0);
    if (auto it = j.find("energy_mix"); it != j.end()) {
        if (!it->is_object()) throw ConfigError(where + ": energy_mix must be an object");
        for (auto& [src, share] : it->items()) {
            if (!share.is_number())
                throw ConfigError(where + ": mix share for '" + src + "' must be a number");
            g.energy_mix[src] = share.get<double>();
        }
    }
    return g;
}

inline nlohmann::json grid_to_json(const GridProfile& g) {
    nlohmann::json j{{"name", g.name},
                     {"ci_g_per_kwh", g.ci_g_per_kwh},
                     {"ewif_l_per_kwh", g.ewif_l_per_kwh},
                     {"adpf_mj_per_kwh", g.adpf_mj_per_kwh},
                     {"adpe_kgsbeq_per_kwh", g.adpe_kgsbeq_per_kwh},
                     {"renewable_share", g.renewable_share}};
    if (!g.energy_mix.empty()) j["energy_mix"] = g.energy_mix;
    return j;
}

}  // namespace detail

namespace detail {

inline AssessmentConfig parse_config_object(const nlohmann::json& j) {
    using detail::require_key;
    using detail::require_number;
    using detail::require_string;
    AssessmentConfig cfg;
    cfg.name = j.value("name", std::string{});
    if (j.contains("compute_gpu_hours"))
        cfg.compute_gpu_hours = require_number(j, "compute_gpu_hours", "config");

    const nlohmann::json& node = require_key(j, "node", "config");
    if (auto it = node.find("total_power_w"); it != node.end())
        cfg.node_total_power_w = it->get<double>();
    const nlohmann::json& power = detail::require_key(node, "power", "config.node");
    if (!power.is_array()) throw ConfigError("config.node.power must be an array");
    for (const auto& pj : power) {
        PowerModel m;
        std::string where = "config.node.power";
        m.kind = detail::kind_from_name(require_string(pj, "kind", where), kAllPowerComponents,
                                        where);
        m.quantity = static_cast<int>(require_number(pj, "quantity", where));
        std::string mode = require_string(pj, "mode", where);
        if (mode == "utilization") {
            m.mode = PowerModel::Mode::UtilizationScaled;
            m.tdp_w = require_number(pj, "tdp_w", where);
            m.utilization = require_number(pj, "utilization", where);
        } else if (mode == "constant") {
            m.mode = PowerModel::Mode::Constant;
            m.watts = require_number(pj, "watts", where);
        } else if (mode == "derived") {
            m.mode = PowerModel::Mode::Derived;
        } else {
            throw ConfigError(where + ": unknown mode '" + mode + "'");
        }
        cfg.node_power.push_back(m);
    }

    const nlohmann::json& dc = require_key(j, "datacenter", "config");
    cfg.datacenter.pue = require_number(dc, "pue", "config.datacenter");
    cfg.datacenter.wue_l_per_kwh = require_number(dc, "wue_l_per_kwh", "config.datacenter");
    cfg.datacenter.o_cluster = require_number(dc, "o_cluster", "config.datacenter");

    cfg.grid = detail::grid_from_json(require_key(j, "grid", "config"), "config.grid");

    const nlohmann::json& emb = require_key(j, "embodied", "config");
    const nlohmann::json& alloc = require_key(emb, "allocation", "config.embodied");
    cfg.allocation.lifespan_hours =
        require_number(alloc, "lifespan_hours", "config.embodied.allocation");
    cfg.allocation.utilization_rate =
        require_number(alloc, "utilization_rate", "config.embodied.allocation");

    const nlohmann::json& factors = require_key(emb, "factors", "config.embodied");
    for (auto& [fam_name, fj] : factors.items()) {
        std::string where = "config.embodied.factors." + fam_name;
        ComponentFamily fam = detail::kind_from_name(fam_name, kAllComponentFamilies, where);
        FamilyFactors ff;
        if (fj.contains("base")) ff.base = detail::factors_from_json(fj["base"], where);
        if (fj.contains("die")) ff.die = detail::factors_from_json(fj["die"], where);
        std::string basis = fj.value("adp_basis", "elements_and_fossil");
        if (basis == "elements_only")
            ff.adp_basis = AdpBasis::ElementsOnly;
        else if (basis == "elements_and_fossil")
            ff.adp_basis = AdpBasis::ElementsAndFossil;
        else
            throw ConfigError(where + ": unknown adp_basis '" + basis + "'");
        cfg.factors[fam] = ff;
    }

    const nlohmann::json& comps = require_key(emb, "components", "config.embodied");
    if (!comps.is_array()) throw ConfigError("config.embodied.components must be an array");
    for (const auto& cj : comps) {
        ComponentSpec c;
        std::string where = "config.embodied.components";
        c.name = require_string(cj, "name", where);
        where += "." + c.name;
        c.family = detail::kind_from_name(require_string(cj, "family", where),
                                          kAllComponentFamilies, where);
        c.quantity_per_node = static_cast<int>(require_number(cj, "quantity", where));
        c.die_size_cm2 = cj.value("die_size_cm2", 0.0);
        c.capacity_gb = cj.value("capacity_gb", 0.0);
        c.density_gb_per_cm2 = cj.value("density_gb_per_cm2", 0.0);
        c.weight_kg = cj.value("weight_kg", 0.0);
        cfg.components.push_back(std::move(c));
    }

    cfg.finalize();
    return cfg;
}

}  // namespace detail

inline AssessmentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: root must be an object");
    try {
        return detail::parse_config_object(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: malformed value: ") + e.what());
    }
}

inline nlohmann::json config_to_json(const AssessmentConfig& cfg) {
    nlohmann::json j;
    j["name"] = cfg.name;
    j["compute_gpu_hours"] = cfg.compute_gpu_hours;

    nlohmann::json power = nlohmann::json::array();
    for (const PowerModel& m : cfg.node_power) {
        nlohmann::json pj{{"kind", std::string(to_string(m.kind))},
                          {"quantity", m.quantity}};
        switch (m.mode) {
            case PowerModel::Mode::UtilizationScaled:
                pj["mode"] = "utilization";
                pj["tdp_w"] = m.tdp_w;
                pj["utilization"] = m.utilization;
                break;
            case PowerModel::Mode::Constant:
                pj["mode"] = "constant";
                pj["watts"] = m.watts;
                break;
            case PowerModel::Mode::Derived:
                pj["mode"] = "derived";
                break;
        }
        power.push_back(std::move(pj));
    }
    j["node"] = nlohmann::json{{"power", std::move(power)}};
    if (cfg.node_total_power_w) j["node"]["total_power_w"] = *cfg.node_total_power_w;

    j["datacenter"] = {{"pue", cfg.datacenter.pue},
                       {"wue_l_per_kwh", cfg.datacenter.wue_l_per_kwh},
                       {"o_cluster", cfg.datacenter.o_cluster}};
    j["grid"] = detail::grid_to_json(cfg.grid);

    nlohmann::json factors;
    for (const auto& [fam, ff] : cfg.factors) {
        nlohmann::json fj;
        fj["base"] = detail::factors_to_json(ff.base);
        ImpactFactors zero;
        if (!(ff.die == zero)) fj["die"] = detail::factors_to_json(ff.die);
        fj["adp_basis"] = ff.adp_basis == AdpBasis::ElementsOnly ? "elements_only"
                                                                 : "elements_and_fossil";
        factors[std::string(to_string(fam))] = std::move(fj);
    }
    nlohmann::json comps = nlohmann::json::array();
    for (const ComponentSpec& c : cfg.components) {
        nlohmann::json cj{{"name", c.name},
                          {"family", std::string(to_string(c.family))},
                          {"quantity", c.quantity_per_node}};
        if (c.die_size_cm2 > 0) cj["die_size_cm2"] = c.die_size_cm2;
        if (c.capacity_gb > 0) cj["capacity_gb"] = c.capacity_gb;
        if (c.density_gb_per_cm2 > 0) cj["density_gb_per_cm2"] = c.density_gb_per_cm2;
        if (c.weight_kg > 0) cj["weight_kg"] = c.weight_kg;
        comps.push_back(std::move(cj));
    }
    j["embodied"] = {{"allocation",
                      {{"lifespan_hours", cfg.allocation.lifespan_hours},
                       {"utilization_rate", cfg.allocation.utilization_rate}}},
                     {"factors", std::move(factors)},
                     {"components", std::move(comps)}};
    return j;
}

inline AssessmentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("config file is not valid JSON: " + path);
    try {
        return config_from_json(j);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

inline void save_config(const AssessmentConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write config file: " + path);
    out << config_to_json(cfg).dump(2) << "\n";
}

// The assessed cluster: 127 nodes of 8 H100s in a French datacenter, with
// Boavizta/ADEME production factors. Values mirror configs/nabuchodonosor-fr.json.
inline AssessmentConfig reference_config() {
    AssessmentConfig cfg;
    cfg.name = "nabuchodonosor-fr";
    cfg.compute_gpu_hours = 3'256'263.0;
    cfg.node_total_power_w = 10'200.0;
    cfg.node_power = {
        {PowerComponentKind::Gpu, 8, PowerModel::Mode::UtilizationScaled, 700.0, 0.95, 0.0},
        {PowerComponentKind::Cpu, 2, PowerModel::Mode::UtilizationScaled, 350.0, 0.05, 0.0},
        {PowerComponentKind::Ram, 32, PowerModel::Mode::Constant, 0.0, 0.0, 3.94},
        {PowerComponentKind::Other, 1, PowerModel::Mode::Derived, 0.0, 0.0, 0.0},
    };
    cfg.datacenter = {1.25, 0.25, 1.11};
    cfg.grid = {"France", 41.0, 3.34, 9.31, 4.86e-8, 0.272, {}};
    cfg.allocation = {35'040.0, 0.6};
    cfg.factors[ComponentFamily::Gpu] = {{3'685.0, 270.40, 8.941e-3}, {}, AdpBasis::ElementsOnly};
    cfg.factors[ComponentFamily::Cpu] = {{156.0, 9.14, 2.04e-2},
                                         {26.5, 1.97, 5.87e-7},
                                         AdpBasis::ElementsAndFossil};
    cfg.factors[ComponentFamily::Ram] = {{74.0, 5.22, 1.69e-3},
                                         {27.3, 2.20, 6.30e-5},
                                         AdpBasis::ElementsAndFossil};
    cfg.factors[ComponentFamily::Ssd] = {{74.0, 6.34, 5.63e-4},
                                         {27.3, 2.20, 6.30e-5},
                                         AdpBasis::ElementsAndFossil};
    cfg.factors[ComponentFamily::Psu] = {{352.0, 24.3, 8.30e-3}, {}, AdpBasis::ElementsAndFossil};
    cfg.factors[ComponentFamily::Motherboard] = {{836.0, 66.1, 3.69e-3},
                                                 {},
                                                 AdpBasis::ElementsAndFossil};
    cfg.factors[ComponentFamily::Case] = {{2'200.0, 150.0, 2.02e-2},
                                          {},
                                          AdpBasis::ElementsAndFossil};
    cfg.factors[ComponentFamily::Assembly] = {{68.6, 6.68, 1.41e-6},
                                              {},
                                              AdpBasis::ElementsAndFossil};
    cfg.components = {
        {"gpu", ComponentFamily::Gpu, 8, 0.0, 80.0, 1.65, 0.0},
        {"cpu", ComponentFamily::Cpu, 2, 19.08, 0.0, 0.0, 0.0},
        {"ram", ComponentFamily::Ram, 32, 0.0, 64.0, 2.66, 0.0},
        {"ssd1", ComponentFamily::Ssd, 2, 0.0, 1'920.0, 128.0, 0.0},
        {"ssd2", ComponentFamily::Ssd, 8, 0.0, 3'840.0, 128.0, 0.0},
        {"psu", ComponentFamily::Psu, 6, 0.0, 0.0, 0.0, 3.0},
        {"motherboard", ComponentFamily::Motherboard, 1, 0.0, 0.0, 0.0, 0.0},
        {"case", ComponentFamily::Case, 1, 0.0, 0.0, 0.0, 0.0},
        {"assembly", ComponentFamily::Assembly, 1, 0.0, 0.0, 0.0, 0.0},
    };
    cfg.finalize();
    return cfg;
}

// Grid profiles for the six studied training locations (carbon and water
// intensity only; the other indicators are location-independent here).
inline std::vector<GridProfile> reference_locations() {
    return {
        {"Sweden", 35.0, 4.94, 0.0, 0.0, 0.0, {}},
        {"France", 41.0, 3.34, 0.0, 0.0, 0.0, {}},
        {"USA", 384.0, 2.30, 0.0, 0.0, 0.0, {}},
        {"Australia", 554.0, 2.99, 0.0, 0.0, 0.0, {}},
        {"China", 555.0, 4.57, 0.0, 0.0, 0.0, {}},
        {"Poland", 612.0, 1.12, 0.0, 0.0, 0.0, {}},
    };
}

inline std::vector<GridProfile> locations_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("locations") || !j["locations"].is_array())
        throw ConfigError("locations: root must be an object with a 'locations' array");
    std::vector<GridProfile> out;
    for (const auto& gj : j["locations"])
        out.push_back(detail::grid_from_json(gj, "locations"));
    return out;
}

inline std::vector<GridProfile> load_locations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open locations file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("locations file is not valid JSON: " + path);
    try {
        return locations_from_json(j);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace ecotally
