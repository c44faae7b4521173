#include "graphfilt/cli.hpp"

int main(int argc, char** argv) { return graphfilt::run_cli(argc, argv); }
