#pragma once

// JSON (de)serialization of ladders, ARF systems and measure specs. Doubles
// are written in shortest round-trip form, so reading back is bit-exact.

#include <string>

#include <json.hpp>

#include "orfkit/orf.hpp"
#include "orfkit/transforms.hpp"

namespace orfkit::io {

using json = nlohmann::ordered_json;

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const MeasureSpec& spec);
/// {"type":"lebesgue"} | {"type":"poisson","alpha":[re,im]} | {"type":"samples","theta":[...],"w":[...]}
MeasureSpec measure_spec_from_json(const json& j);

json to_json(const OrfSystem& system);
OrfSystem orf_system_from_json(const json& j);

json to_json(const ArfSystem& arf);
ArfSystem arf_system_from_json(const json& j);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::string& path, const std::string& contents);

}  // namespace orfkit::io
