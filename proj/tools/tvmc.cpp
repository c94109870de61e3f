#include "tvmc/cli.hpp"

int main(int argc, char** argv) { return tvmc::cli::run(argc, argv); }
