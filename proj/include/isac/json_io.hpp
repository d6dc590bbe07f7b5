// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// JSON dumps of channel realizations. Complex entries are [re, im] pairs and
// matrices are arrays of rows.

#pragma once

#include <string>

#include "isac/channel.hpp"

namespace isac {

std::string channel_to_json(const ChannelSet& ch);
/// Throws ValidationError on malformed input or inconsistent dimensions.
ChannelSet channel_from_json(const std::string& text);

}  // namespace isac
