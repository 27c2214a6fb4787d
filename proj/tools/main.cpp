#include "cycap/cli.hpp"

int main(int argc, char** argv) { return cycap::run_cli(argc, argv); }
