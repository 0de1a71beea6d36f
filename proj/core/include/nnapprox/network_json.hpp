#pragma once

#include <string>
#include <string_view>

#include "nnapprox/network.hpp"

namespace nnapprox {

/// Canonical network document:
///   {"activation": "abs"|"relu"|"identity",
///    "weights": [[[row], [row], ...], ...],
///    "meta": {...}}
/// Weights are written densely with 17 significant digits, so reading the
/// text back reproduces every entry bit for bit. General activations have no
/// serial form and are rejected.
std::string network_to_json(const Network& net);
Network network_from_json(std::string_view text);

Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

/// Shortest form is not used on purpose: always 17 significant digits.
std::string format_real(double value);

}  // namespace nnapprox
