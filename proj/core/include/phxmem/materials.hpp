#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "phxmem/errors.hpp"

namespace phxmem {

using complexd = std::complex<double>;

/// Complex refractive index convention used everywhere in this library:
/// n_tilde = n - i*kappa under an exp(+i*omega*t) time dependence, so a
/// positive extinction coefficient kappa attenuates a forward-propagating
/// field. to_complex_index / kappa_of keep the sign convention in one place.
inline complexd to_complex_index(double n, double kappa) { return {n, -kappa}; }
inline double kappa_of(complexd index) { return -index.imag(); }

enum class Phase { amorphous, crystalline };

const char* to_string(Phase phase);

/// One (wavelength, n, kappa) dispersion sample.
struct OpticalSample {
    double wl_nm = 0.0;
    double n = 0.0;
    double kappa = 0.0;
};

/// Volume fraction of the crystalline phase, 0 = fully amorphous,
/// 1 = fully crystalline. Construction validates the [0,1] range.
struct Fraction {
    double value = 0.0;

    Fraction() = default;
    explicit Fraction(double v);
};

struct ThermalProps {
    double k_amorphous_w_mk = 0.0;   // equal for non-PCM materials
    double k_crystalline_w_mk = 0.0;
    double rho_kg_m3 = 0.0;
    double cp_j_kgk = 0.0;

    double conductivity(Fraction p) const {
        return (1.0 - p.value) * k_amorphous_w_mk + p.value * k_crystalline_w_mk;
    }
    double volumetric_heat_j_m3k() const { return rho_kg_m3 * cp_j_kgk; }
};

/// Optical and thermal constants for one material. Phase-change materials
/// carry two dispersion tables plus transition temperatures; passive
/// materials carry a single table that answers for either phase.
struct MaterialRecord {
    std::string name;
    std::vector<OpticalSample> amorphous_table;
    std::vector<OpticalSample> crystalline_table;  // == amorphous_table for passive materials
    bool pcm = false;
    double t_g_k = 0.0;  // crystallization temperature, PCM only
    double t_l_k = 0.0;  // melting temperature, PCM only
    ThermalProps thermal;
    std::string source;  // free-form provenance note carried from the data file

    const std::vector<OpticalSample>& table(Phase phase) const {
        return phase == Phase::crystalline ? crystalline_table : amorphous_table;
    }
};

/// Interpolated complex index at `wl_nm` for the given phase. Piecewise
/// linear in n and kappa separately; exact at stored sample points.
/// Throws PhysicsError when wl_nm falls outside the stored span.
complexd lookup_nk(const MaterialRecord& material, Phase phase, double wl_nm);

/// Intermediate-state complex index from the Lorentz-Lorenz mixing rule on
/// the endpoint permittivities eps = (n - i*kappa)^2:
///   (eps_eff - 1)/(eps_eff + 2) =
///       p*(eps_c - 1)/(eps_c + 2) + (1-p)*(eps_a - 1)/(eps_a + 2)
/// Endpoints p = 0 and p = 1 return the table lookups bit-exactly.
complexd effective_index(const MaterialRecord& material, Fraction p, double wl_nm);

/// Power attenuation in dB per micrometer for a medium (or mode) with
/// extinction coefficient kappa at vacuum wavelength wl_nm:
///   alpha_dB/um = 40*pi*kappa / (lambda_um * ln 10)
double absorption_db_per_um(double kappa, double wl_nm);

/// Read-only material database loaded from a JSON file. Safe for unlimited
/// concurrent readers once constructed.
class MaterialDb {
public:
    static MaterialDb load(const std::string& path);
    static MaterialDb from_json_text(const std::string& text, const std::string& origin);

    const MaterialRecord& get(const std::string& name) const;
    bool has(const std::string& name) const { return records_.count(name) != 0; }
    std::vector<std::string> names() const;

private:
    std::map<std::string, MaterialRecord> records_;
};

} // namespace phxmem
