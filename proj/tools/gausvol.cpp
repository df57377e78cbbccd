#include "gausvol/cli.hpp"

int main(int argc, char** argv) { return gausvol::cli(argc, argv); }
