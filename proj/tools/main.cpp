#include "microrep/cli.hpp"

int main(int argc, char** argv) { return microrep::run_cli(argc, argv); }
