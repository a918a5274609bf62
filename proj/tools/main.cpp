// SPDX-License-Identifier: Apache-2.0
#include "bdris/harness.hpp"

int main(int argc, char** argv) { return bdris::harness::cli_main(argc, argv); }
