#pragma once

#include <string>

#include "phxmem/errors.hpp"

namespace phxmem {

/// Axis-aligned rectangle in window coordinates, micrometers.
struct RectUm {
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool contains(double x, double y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

/// Waveguide + PCM strip cross-section and the simulation window around it.
/// The window origin sits at the lower-left corner; the core is centered.
struct CrossSection {
    double wg_width_nm = 470.0;
    double wg_height_nm = 220.0;
    double pcm_width_nm = 0.0;      // 0 -> same as wg_width_nm
    double pcm_thickness_nm = 0.0;  // 0 -> bare waveguide
    double spacer_above_pcm_nm = 600.0;  // heater standoff, used by the thermal stack
    std::string core_material = "Si";
    std::string substrate_material = "SiO2";
    std::string cladding_material = "SiO2";
    double window_width_um = 4.0;
    double window_height_um = 3.0;
    double grid_pitch_nm = 10.0;

    double effective_pcm_width_nm() const {
        return pcm_width_nm > 0.0 ? pcm_width_nm : wg_width_nm;
    }

    RectUm core_rect() const;
    RectUm pcm_rect() const;  // zero-height when pcm_thickness_nm == 0

    int nx() const;
    int ny() const;
    double pitch_um() const { return grid_pitch_nm * 1e-3; }

    /// Throws ConfigError when dimensions are non-positive, the grid pitch is
    /// too coarse for the PCM film, or the window lacks a 1 um cladding margin
    /// around the core + PCM stack.
    void validate() const;

    /// Stable string identity for memoization of mode solutions.
    std::string cache_key(const std::string& pcm_material, double wl_nm, double p) const;
};

/// Ti/TiN microheater placed above the PCM strip.
struct HeaterSpec {
    double width_um = 2.0;
    double length_um = 2.0;
    double thickness_nm = 110.0;
    double resistivity_uohm_cm = 60.0;
    double sheet_resistance_ohm_sq = 5.5;
    double melt_limit_k = 1941.0;
    double standoff_nm = 600.0;  // gap above the PCM top; kept in sync with spacer_above_pcm_nm

    void validate() const;
};

} // namespace phxmem
