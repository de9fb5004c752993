// Copyright 2026 The angleopt Authors
// SPDX-License-Identifier: Apache-2.0

#include "workers.hpp"

#include <cstdlib>
#include <string>

namespace angleopt {

unsigned resolve_worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ANGLEOPT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // Unparseable values fall back to the hardware default.
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace angleopt
