// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace isac {

/// Sets the spdlog level from ISAC_LOG (error, warn, info, debug); the
/// default is warn. Unknown values keep the default and emit a warning.
void init_logging();

}  // namespace isac
