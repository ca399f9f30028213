#include "zmv/cli.hpp"

int main(int argc, char** argv) { return zmv::cli::run(argc, argv); }
