#include "kaccoh/cli.hpp"

int main(int argc, char** argv) { return kaccoh::run_cli(argc, argv); }
