#include "smithdd/interface.hpp"

#include <cmath>
#include <stdexcept>

namespace smithdd {

std::string_view channel_name(Channel c)
{
    switch (c) {
    case Channel::kUn: return "u_n";
    case Channel::kUtau: return "u_tau";
    case Channel::kSigmaN: return "sigma_n";
    case Channel::kSigmaTau: return "sigma_tau";
    case Channel::kW: return "w";
    case Channel::kLapW: return "lap_w";
    case Channel::kDnW: return "dn_w";
    case Channel::kDnLapW: return "dn_lap_w";
    }
    return "?";
}

bool is_flux_like(Channel c)
{
    return c == Channel::kUn || c == Channel::kSigmaTau || c == Channel::kDnW || c == Channel::kDnLapW;
}

int channel_length(Channel c, int ny)
{
    return (c == Channel::kUn || c == Channel::kSigmaN) ? ny : ny - 1;
}

const std::vector<double>& InterfaceTrace::at(Channel c) const
{
    auto it = values.find(c);
    if (it == values.end())
        throw std::out_of_range("trace has no channel '" + std::string(channel_name(c)) + "'");
    return it->second;
}

double jump_norm(const InterfaceTrace& t1, const InterfaceTrace& t2, Channel channel, double h)
{
    if (t1.kind != t2.kind)
        throw std::invalid_argument("jump_norm: traces of different kinds");
    const auto& a = t1.at(channel);
    const auto& b = t2.at(channel);
    if (a.size() != b.size())
        throw std::invalid_argument("jump_norm: traces of different lengths");
    const double sign = is_flux_like(channel) ? 1.0 : -1.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double jump = a[j] + sign * b[j];
        sum += jump * jump;
    }
    return std::sqrt(h * sum);
}

std::string_view variant_name(BcVariant v)
{
    switch (v) {
    case BcVariant::kDirichletVelocity: return "dirichlet_velocity";
    case BcVariant::kStress: return "stress";
    case BcVariant::kMixedCorrection: return "mixed_correction";
    case BcVariant::kMixedUpdate: return "mixed_update";
    case BcVariant::kBilapNeumann: return "bilap_neumann";
    case BcVariant::kBilapDirichlet: return "bilap_dirichlet";
    }
    return "?";
}

std::vector<Channel> required_channels(BcVariant v)
{
    switch (v) {
    case BcVariant::kDirichletVelocity: return {Channel::kUn, Channel::kUtau};
    case BcVariant::kStress: return {Channel::kSigmaN, Channel::kSigmaTau};
    case BcVariant::kMixedCorrection: return {Channel::kUn, Channel::kSigmaTau};
    case BcVariant::kMixedUpdate: return {Channel::kUtau, Channel::kSigmaN};
    case BcVariant::kBilapNeumann: return {Channel::kDnW, Channel::kDnLapW};
    case BcVariant::kBilapDirichlet: return {Channel::kW, Channel::kLapW};
    }
    return {};
}

bool is_stokes_variant(BcVariant v)
{
    return v != BcVariant::kBilapNeumann && v != BcVariant::kBilapDirichlet;
}

InterfaceBcSpec InterfaceBcSpec::zero(BcVariant variant, int ny)
{
    InterfaceBcSpec spec;
    spec.variant = variant;
    spec.data.kind = is_stokes_variant(variant) ? TraceKind::kStokes : TraceKind::kBilaplacian;
    for (Channel c : required_channels(variant))
        spec.data[c].assign(static_cast<std::size_t>(channel_length(c, ny)), 0.0);
    return spec;
}

void InterfaceBcSpec::validate(int ny) const
{
    const auto required = required_channels(variant);
    if (data.values.size() != required.size())
        throw std::invalid_argument("interface data for '" + std::string(variant_name(variant)) +
                                    "' must carry exactly its two channels");
    for (Channel c : required) {
        if (!data.has(c))
            throw std::invalid_argument("interface data for '" + std::string(variant_name(variant)) +
                                        "' lacks channel '" + std::string(channel_name(c)) + "'");
        if (static_cast<int>(data.at(c).size()) != channel_length(c, ny))
            throw std::invalid_argument("channel '" + std::string(channel_name(c)) + "' has wrong length");
    }
}

}  // namespace smithdd
