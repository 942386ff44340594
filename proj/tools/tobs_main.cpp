#include "tobs/cli.hpp"

int main(int argc, char** argv) { return tobs::run_cli(argc, argv); }
