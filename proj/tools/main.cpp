#include "cli.hpp"

int main(int argc, char** argv) { return selfnorm_cli::run(argc, argv); }
