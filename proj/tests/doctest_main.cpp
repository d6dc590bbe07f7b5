// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"
#include "isac/log.hpp"

int main(int argc, char** argv) {
  isac::init_logging();
  return doctest::Context(argc, argv).run();
}
