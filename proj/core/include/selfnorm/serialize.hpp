#pragma once

#include <cstdint>
#include <string>

#include "selfnorm/mixtures.hpp"
#include "selfnorm/montecarlo.hpp"

namespace selfnorm {

std::string measure_to_json_string(const MixingMeasure& f);
MixingMeasure measure_from_json_string(const std::string& json);

std::string event_to_json_string(const EventSpec& e);
EventSpec event_from_json_string(const std::string& json);

// FNV-1a over the canonical (sorted-key) JSON dump; recomputable config hash.
std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace selfnorm
