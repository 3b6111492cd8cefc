#include "qform/cli.hpp"

int main(int argc, char** argv) { return qform::run_cli(argc, argv); }
