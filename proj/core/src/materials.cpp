#include "phxmem/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace phxmem {

using nlohmann::json;

const char* to_string(Phase phase) {
    return phase == Phase::crystalline ? "crystalline" : "amorphous";
}

Fraction::Fraction(double v) : value(v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw PhysicsError("crystallization fraction must lie in [0,1], got " + std::to_string(v));
}

complexd lookup_nk(const MaterialRecord& material, Phase phase, double wl_nm) {
    const auto& table = material.table(phase);
    if (table.empty())
        throw ConfigError("material '" + material.name + "' has no optical table");
    const double lo = table.front().wl_nm;
    const double hi = table.back().wl_nm;
    if (wl_nm < lo || wl_nm > hi) {
        std::ostringstream msg;
        msg << "wavelength " << wl_nm << " nm outside table for material '" << material.name
            << "' (" << to_string(phase) << "), valid span " << lo << "-" << hi << " nm";
        throw PhysicsError(msg.str());
    }
    auto upper = std::lower_bound(table.begin(), table.end(), wl_nm,
                                  [](const OpticalSample& s, double wl) { return s.wl_nm < wl; });
    if (upper->wl_nm == wl_nm)
        return to_complex_index(upper->n, upper->kappa);
    const OpticalSample& b = *upper;
    const OpticalSample& a = *(upper - 1);
    const double t = (wl_nm - a.wl_nm) / (b.wl_nm - a.wl_nm);
    return to_complex_index(a.n + t * (b.n - a.n), a.kappa + t * (b.kappa - a.kappa));
}

complexd effective_index(const MaterialRecord& material, Fraction p, double wl_nm) {
    // Endpoints short-circuit to the table lookup so p in {0,1} is bit-exact.
    if (p.value == 0.0)
        return lookup_nk(material, Phase::amorphous, wl_nm);
    if (p.value == 1.0)
        return lookup_nk(material, Phase::crystalline, wl_nm);

    const complexd na = lookup_nk(material, Phase::amorphous, wl_nm);
    const complexd nc = lookup_nk(material, Phase::crystalline, wl_nm);
    const complexd eps_a = na * na;
    const complexd eps_c = nc * nc;
    auto clausius = [](complexd eps) { return (eps - 1.0) / (eps + 2.0); };
    const complexd mix = p.value * clausius(eps_c) + (1.0 - p.value) * clausius(eps_a);
    const complexd eps_eff = (1.0 + 2.0 * mix) / (1.0 - mix);
    // Im(eps) <= 0 for absorbing media under the n - i*kappa convention, so the
    // principal square root lands on the physical branch (Re >= 0, Im <= 0).
    return std::sqrt(eps_eff);
}

double absorption_db_per_um(double kappa, double wl_nm) {
    if (kappa < 0.0)
        throw PhysicsError("extinction coefficient must be >= 0, got " + std::to_string(kappa));
    if (!(wl_nm > 0.0))
        throw PhysicsError("wavelength must be > 0, got " + std::to_string(wl_nm));
    const double wl_um = wl_nm * 1e-3;
    return 40.0 * std::numbers::pi * kappa / (wl_um * std::numbers::ln10);
}

namespace {

std::vector<OpticalSample> parse_table(const json& arr, const std::string& ctx) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError(ctx + ": expected a non-empty array of {wl_nm,n,k} samples");
    std::vector<OpticalSample> table;
    table.reserve(arr.size());
    for (const auto& row : arr) {
        OpticalSample s;
        s.wl_nm = row.at("wl_nm").get<double>();
        s.n = row.at("n").get<double>();
        s.kappa = row.at("k").get<double>();
        if (!(s.wl_nm > 0.0))
            throw ConfigError(ctx + ": sample wavelength must be > 0");
        if (!(s.n > 0.0))
            throw ConfigError(ctx + ": refractive index must be > 0");
        if (s.kappa < 0.0)
            throw ConfigError(ctx + ": extinction coefficient must be >= 0");
        table.push_back(s);
    }
    for (size_t i = 1; i < table.size(); ++i)
        if (!(table[i].wl_nm > table[i - 1].wl_nm))
            throw ConfigError(ctx + ": samples must be sorted strictly ascending in wavelength");
    return table;
}

void require_span(const std::vector<OpticalSample>& table, const std::string& ctx) {
    if (table.front().wl_nm > 1500.0 || table.back().wl_nm < 1600.0)
        throw ConfigError(ctx + ": PCM table must span at least 1500-1600 nm");
}

double thermal_number(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key))
        throw ConfigError(ctx + ": missing thermal field '" + key + "'");
    return j.at(key).get<double>();
}

MaterialRecord parse_material(const json& jm) {
    MaterialRecord rec;
    rec.name = jm.at("name").get<std::string>();
    const std::string ctx = "material '" + rec.name + "'";

    const json& phases = jm.at("phases");
    if (phases.contains("amorphous") || phases.contains("crystalline")) {
        rec.amorphous_table = parse_table(phases.at("amorphous"), ctx + " amorphous");
        rec.crystalline_table = parse_table(phases.at("crystalline"), ctx + " crystalline");
        rec.pcm = true;
    } else if (phases.contains("index")) {
        rec.amorphous_table = parse_table(phases.at("index"), ctx);
        rec.crystalline_table = rec.amorphous_table;
        rec.pcm = false;
    } else {
        throw ConfigError(ctx + ": phases must hold amorphous+crystalline tables or a single 'index' table");
    }

    if (rec.pcm) {
        rec.t_g_k = jm.at("T_g_K").get<double>();
        rec.t_l_k = jm.at("T_l_K").get<double>();
        if (!(rec.t_l_k > rec.t_g_k))
            throw ConfigError(ctx + ": T_l_K must exceed T_g_K");
        require_span(rec.amorphous_table, ctx + " amorphous");
        require_span(rec.crystalline_table, ctx + " crystalline");
    } else {
        rec.t_g_k = jm.value("T_g_K", 0.0);
        rec.t_l_k = jm.value("T_l_K", 0.0);
    }

    const json& th = jm.at("thermal");
    const json& k = th.at("k_W_mK");
    if (k.is_number()) {
        rec.thermal.k_amorphous_w_mk = k.get<double>();
        rec.thermal.k_crystalline_w_mk = k.get<double>();
    } else {
        rec.thermal.k_amorphous_w_mk = thermal_number(k, "amorphous", ctx);
        rec.thermal.k_crystalline_w_mk = thermal_number(k, "crystalline", ctx);
    }
    rec.thermal.rho_kg_m3 = thermal_number(th, "rho_kg_m3", ctx);
    rec.thermal.cp_j_kgk = thermal_number(th, "cp_J_kgK", ctx);
    if (!(rec.thermal.k_amorphous_w_mk > 0.0 && rec.thermal.k_crystalline_w_mk > 0.0 &&
          rec.thermal.rho_kg_m3 > 0.0 && rec.thermal.cp_j_kgk > 0.0))
        throw ConfigError(ctx + ": thermal constants must be positive");

    rec.source = jm.value("source", std::string{});
    return rec;
}

} // namespace

MaterialDb MaterialDb::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open materials file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

MaterialDb MaterialDb::from_json_text(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("materials file '" + origin + "': " + e.what());
    }
    MaterialDb db;
    try {
        for (const auto& jm : root.at("materials")) {
            MaterialRecord rec = parse_material(jm);
            if (db.records_.count(rec.name))
                throw ConfigError("duplicate material '" + rec.name + "'");
            db.records_.emplace(rec.name, std::move(rec));
        }
    } catch (const json::exception& e) {
        throw ConfigError("materials file '" + origin + "': " + e.what());
    }
    if (db.records_.empty())
        throw ConfigError("materials file '" + origin + "' defines no materials");
    return db;
}

const MaterialRecord& MaterialDb::get(const std::string& name) const {
    auto it = records_.find(name);
    if (it == records_.end())
        throw ConfigError("unknown material '" + name + "'");
    return it->second;
}

std::vector<std::string> MaterialDb::names() const {
    std::vector<std::string> out;
    out.reserve(records_.size());
    for (const auto& [name, rec] : records_) out.push_back(name);
    return out;
}

} // namespace phxmem
