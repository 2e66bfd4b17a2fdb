#ifndef GAUSSCAP_CHANNEL_IO_HPP
#define GAUSSCAP_CHANNEL_IO_HPP

#include <string>

#include <json.hpp>

#include "gausscap/channel.hpp"

namespace gausscap {

// Channel files are JSON objects
//   {"n_in": N, "n_out": K, "H_s": [...], "Y": [...], "n": n, "xi": xi}
// with H_s (2K x 2N) and Y (2K x 2K) stored row-major as flat arrays.
// Doubles are written in shortest round-trip form, so a save/load cycle
// reproduces every entry bit for bit.

nlohmann::json channel_to_json(const GaussianChannel& ch);

/// Throws Error{ParseError} on malformed documents.
GaussianChannel channel_from_json(const nlohmann::json& doc);

std::string dump_channel(const GaussianChannel& ch);
GaussianChannel parse_channel(const std::string& text);

GaussianChannel load_channel_file(const std::string& path);
void save_channel_file(const GaussianChannel& ch, const std::string& path);

}  // namespace gausscap

#endif  // GAUSSCAP_CHANNEL_IO_HPP
