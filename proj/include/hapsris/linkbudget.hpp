#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "hapsris/deployment.hpp"
#include "hapsris/geometry.hpp"

namespace hapsris {

/// Carrier, band and power budget shared by the HAPS-RIS and UAV networks.
/// Powers and gains are stored in the units a scenario file uses (dBm, dB)
/// and converted on access.
struct RadioParams {
    double carrier_hz = 2.0e9;
    double wave_speed_mps = 3.0e8;
    double total_bandwidth_hz = 100.0e6;
    int total_subcarriers = 64;
    double noise_psd_dbm_per_hz = -174.0;
    double cs_power_dbm = 40.0;
    double uav_power_dbm = 20.0;
    double cs_antenna_gain_db = 43.2;
    double user_antenna_gain_db = 0.0;
    double uav_antenna_gain_db = 0.0;

    /// B_l = BW / L^tot.
    double subcarrier_bandwidth_hz() const;
    /// The band is split evenly: L^CS = L^UAV = L^tot / 2.
    int cs_subcarriers() const { return total_subcarriers / 2; }
    int uav_subcarriers() const { return total_subcarriers / 2; }
    /// N0 * B_l in watts.
    double noise_power_w() const;
    /// CS power spread uniformly over the L^CS subcarriers.
    double cs_subcarrier_power_w() const;
    double uav_power_w() const;
};

/// Air-to-ground average path-loss model (LoS/NLoS mixture).
struct AtgParams {
    double alpha = 2.0;
    double eta_los = 1.0;
    double eta_nlos = 31.0;
    double psi = 5.0;
    double beta = 0.5;
};

struct LinkGain {
    double amplitude = 0.0;
};

/// mu * exp(-j (ris_phase - cs_side_phase - user_side_phase)).
struct ReflectionCoefficient {
    double mu = 1.0;
    double ris_phase = 0.0;
    double cs_side_phase = 0.0;
    double user_side_phase = 0.0;

    std::complex<double> value() const;
};

/// Elements [first_element, first_element + element_count) of the RIS
/// reflect toward one user on CS-band subcarrier `subcarrier`.
struct SubcarrierGroup {
    int subcarrier = 0;
    std::size_t first_element = 0;
    std::size_t element_count = 0;
};

/// Free-space loss (4 pi f_c d / c)^2. Throws DomainError for d <= 0.
double friis_path_loss(double distance_m, const RadioParams& radio);

/// Per-element cascade amplitude CS -> RIS -> user with every element placed
/// at the HAPS position. Throws DomainError if any two points coincide.
LinkGain cascade_amplitude(const Position3& user, const Position3& cs, const Position3& haps,
                           const RadioParams& radio);

/// RIS phase that co-phases the reflection with the CS-side and user-side
/// phases. Returns the k = 0 representative of xi + omega + 2 k pi.
double optimal_phase(double cs_side_phase, double user_side_phase);

/// |sum_m h * theta_m| for a set of elements sharing one cascade amplitude.
double coherent_amplitude(std::span<const ReflectionCoefficient> elements, LinkGain gain);

/// Per-subcarrier SNR with n phase-aligned elements: P (n mu |h|)^2 / (N0 B_l).
double haps_snr_per_subcarrier(LinkGain gain, std::size_t elements_on_subcarrier, double mu,
                               double subcarrier_power_w, const RadioParams& radio);

/// Sum over the user's groups of B_l log2(1 + SNR). Throws AllocationError
/// when a group's subcarrier is outside the CS half-band.
double haps_user_rate(std::span<const SubcarrierGroup> groups, LinkGain gain, double mu,
                      double subcarrier_power_w, const RadioParams& radio);

/// Elevation of the UAV seen from the user, in degrees.
double elevation_angle_deg(const Position3& user, const Position3& uav);

double los_probability(double theta_deg, const AtgParams& atg);

/// Average (LoS/NLoS-weighted) linear path loss between a ground user and a UAV.
double uav_avg_path_loss(const Position3& user, const Position3& uav, const RadioParams& radio,
                         const AtgParams& atg);

/// |h|^2 = G_uav G_user / average path loss.
double uav_channel_power_gain(const Position3& user, const Position3& uav,
                              const RadioParams& radio, const AtgParams& atg);

/// Evaluates SINR and rates for one deployment. Channel gains and per-UAV
/// transmit plans are computed once on construction.
///
/// Each UAV spreads its power uniformly over the subcarriers its users hold;
/// a UAV with no users is silent. Interference on subcarrier l comes from
/// every other UAV that has l in use.
class UavLinkEvaluator {
public:
    UavLinkEvaluator(const UavDeployment& deployment, const RadioParams& radio,
                     const AtgParams& atg);

    /// Throws ContractViolation when `user` does not hold `subcarrier`.
    double sinr(std::size_t user, int subcarrier) const;
    double rate(std::size_t user) const;
    std::vector<double> rates() const;

    double subcarrier_power_w(std::size_t uav) const { return subcarrier_power_w_[uav]; }
    bool active(std::size_t uav, int subcarrier) const;

private:
    std::vector<std::size_t> association_;
    std::vector<std::vector<int>> subcarriers_;
    double noise_w_;
    double bandwidth_hz_;
    int band_size_;
    std::vector<double> subcarrier_power_w_;
    std::vector<std::vector<char>> active_;
    std::vector<std::vector<double>> gain_;  // [user][uav]
};

double uav_sinr(const UavDeployment& deployment, std::size_t user, int subcarrier,
                const RadioParams& radio, const AtgParams& atg);

double uav_user_rate(const UavDeployment& deployment, std::size_t user,
                     const RadioParams& radio, const AtgParams& atg);

}  // namespace hapsris
