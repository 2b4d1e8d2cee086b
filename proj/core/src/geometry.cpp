#include "phxmem/geometry.hpp"

#include <cmath>
#include <sstream>

namespace phxmem {

RectUm CrossSection::core_rect() const {
    const double w = wg_width_nm * 1e-3;
    const double h = wg_height_nm * 1e-3;
    const double cx = window_width_um / 2.0;
    const double cy = window_height_um / 2.0;
    return {cx - w / 2.0, cx + w / 2.0, cy - h / 2.0, cy + h / 2.0};
}

RectUm CrossSection::pcm_rect() const {
    const double w = effective_pcm_width_nm() * 1e-3;
    const double t = pcm_thickness_nm * 1e-3;
    const double cx = window_width_um / 2.0;
    const double top_of_core = core_rect().y1;
    return {cx - w / 2.0, cx + w / 2.0, top_of_core, top_of_core + t};
}

int CrossSection::nx() const { return static_cast<int>(std::llround(window_width_um / pitch_um())); }
int CrossSection::ny() const { return static_cast<int>(std::llround(window_height_um / pitch_um())); }

void CrossSection::validate() const {
    std::ostringstream err;
    if (!(wg_width_nm > 0) || !(wg_height_nm > 0))
        err << "waveguide dimensions must be positive; ";
    if (pcm_thickness_nm < 0 || pcm_width_nm < 0)
        err << "PCM dimensions must be non-negative; ";
    if (!(window_width_um > 0) || !(window_height_um > 0))
        err << "window dimensions must be positive; ";
    if (!(grid_pitch_nm > 0))
        err << "grid pitch must be positive; ";
    if (pcm_thickness_nm > 0 && grid_pitch_nm > std::min(pcm_thickness_nm, 20.0))
        err << "grid pitch must not exceed min(pcm_thickness, 20 nm) when a PCM film is present; ";
    if (err.str().empty()) {
        const double margin_x =
            (window_width_um - std::max(wg_width_nm, effective_pcm_width_nm()) * 1e-3) / 2.0;
        const double margin_bottom = core_rect().y0;
        const double margin_top = window_height_um - pcm_rect().y1;
        if (margin_x < 1.0 || margin_bottom < 1.0 || margin_top < 1.0)
            err << "window must leave >= 1 um cladding margin around the core + PCM stack; ";
        if (nx() < 3 || ny() < 3)
            err << "window must span at least 3 grid cells per axis; ";
    }
    if (!err.str().empty())
        throw ConfigError("invalid cross-section: " + err.str());
}

std::string CrossSection::cache_key(const std::string& pcm_material, double wl_nm, double p) const {
    std::ostringstream key;
    key.precision(17);
    key << pcm_material << '|' << wg_width_nm << '|' << wg_height_nm << '|' << pcm_width_nm << '|'
        << pcm_thickness_nm << '|' << core_material << '|' << substrate_material << '|'
        << cladding_material << '|' << window_width_um << '|' << window_height_um << '|'
        << grid_pitch_nm << '|' << wl_nm << '|' << p;
    return key.str();
}

void HeaterSpec::validate() const {
    if (!(width_um > 0) || !(length_um > 0) || !(thickness_nm > 0))
        throw ConfigError("heater dimensions must be positive");
    if (!(resistivity_uohm_cm > 0) || !(sheet_resistance_ohm_sq > 0))
        throw ConfigError("heater electrical constants must be positive");
    if (!(melt_limit_k > 300.0))
        throw ConfigError("heater melt limit must exceed ambient (300 K)");
    if (standoff_nm < 0)
        throw ConfigError("heater standoff must be non-negative");
}

} // namespace phxmem
