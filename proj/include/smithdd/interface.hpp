#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace smithdd {

enum class TraceKind { kStokes, kBilaplacian };

enum class Channel {
    // Stokes
    kUn,
    kUtau,
    kSigmaN,
    kSigmaTau,
    // bi-Laplacian
    kW,
    kLapW,
    kDnW,
    kDnLapW,
};

std::string_view channel_name(Channel c);
/// Channels whose continuity means the two own-frame values sum to zero
/// (normal velocity, tangential stress, normal derivatives). The others
/// are continuous when equal.
bool is_flux_like(Channel c);

/// Discrete functions on the interface, one array per channel.
struct InterfaceTrace {
    TraceKind kind = TraceKind::kStokes;
    std::map<Channel, std::vector<double>> values;

    bool has(Channel c) const { return values.count(c) != 0; }
    /// Throws std::out_of_range naming the channel if absent.
    const std::vector<double>& at(Channel c) const;
    std::vector<double>& operator[](Channel c) { return values[c]; }
};

/// sqrt(h * sum_j jump_j^2) where jump = t1 + t2 for flux-like channels and
/// t1 - t2 otherwise. Throws std::invalid_argument on kind/length mismatch and
/// std::out_of_range when the channel is missing.
double jump_norm(const InterfaceTrace& t1, const InterfaceTrace& t2, Channel channel, double h);

enum class BcVariant {
    kDirichletVelocity,  // u_n, u_tau
    kStress,             // sigma_n, sigma_tau
    kMixedCorrection,    // u_n, sigma_tau
    kMixedUpdate,        // u_tau, sigma_n
    kBilapNeumann,       // dn_w, dn_lap_w
    kBilapDirichlet,     // w, lap_w
};

std::string_view variant_name(BcVariant v);
std::vector<Channel> required_channels(BcVariant v);
bool is_stokes_variant(BcVariant v);

/// Interface condition on the subdomain's interface edge; the outer boundary is
/// always homogeneous Dirichlet (velocity, or w = lap w = 0).
struct InterfaceBcSpec {
    BcVariant variant = BcVariant::kDirichletVelocity;
    InterfaceTrace data;
    // Mean pressure imposed when the variant leaves the pressure level free.
    double pressure_mean = 0.0;

    /// Data with every required channel set to zero.
    static InterfaceBcSpec zero(BcVariant variant, int ny);
    /// Throws std::invalid_argument unless the data carries exactly the
    /// required channels with the right lengths for ny cells.
    void validate(int ny) const;
};

/// Number of samples of a channel along an interface with ny cells.
int channel_length(Channel c, int ny);

}  // namespace smithdd
