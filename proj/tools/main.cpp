// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

int main(int argc, char** argv) { return cpsa::cli::run_cli(argc, argv); }
