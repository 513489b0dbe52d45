#include "ssb/cli.hpp"

int main(int argc, char** argv) { return ssb::run_cli(argc, argv); }
