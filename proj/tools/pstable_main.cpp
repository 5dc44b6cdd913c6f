#include "pstable/cli.hpp"

int main(int argc, char** argv) { return pstable::run_cli(argc, argv); }
