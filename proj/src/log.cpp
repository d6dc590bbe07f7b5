// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/spdlog.h>

namespace isac {

void init_logging() {
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("ISAC_LOG");
  if (!env || !*env) return;
  const std::string v(env);
  if (v == "error") spdlog::set_level(spdlog::level::err);
  else if (v == "warn") spdlog::set_level(spdlog::level::warn);
  else if (v == "info") spdlog::set_level(spdlog::level::info);
  else if (v == "debug") spdlog::set_level(spdlog::level::debug);
  else spdlog::warn("ISAC_LOG={} not recognized (error, warn, info, debug)", v);
}

}  // namespace isac
