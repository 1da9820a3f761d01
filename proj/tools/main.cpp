#include "bcdr/cli.hpp"

int main(int argc, char** argv) { return bcdr::run_cli(argc, argv); }
