#include "spectree/cli.hpp"

int main(int argc, char** argv) { return spectree::run_cli(argc, argv); }
