#include "pompeiu/cli.hpp"

int main(int argc, char** argv) { return pompeiu::cli::run(argc, argv); }
