import argparse
import logging
import signal
import sys

import beamlink
import lunar_wpt_impl

LOG_FORMAT = "hybrid-wpt [%(name)s] %(levelname)s: %(message)s"


# set signal handlers to switch log level
def signal_handler_sigusr1(signum, frame):
    # set log level to debug or revert if set already
    if lunar_wpt_impl.logger.getEffectiveLevel() != logging.DEBUG:
        lunar_wpt_impl.logger.info("signal_handler_sigusr1(): Setting logger level to debug")
        lunar_wpt_impl.logger.setLevel(logging.DEBUG)
        beamlink.logger.setLevel(logging.DEBUG)
    else:
        lunar_wpt_impl.logger.info("signal_handler_sigusr1(): Revert logger level to info")
        lunar_wpt_impl.logger.setLevel(logging.INFO)
        beamlink.logger.setLevel(logging.INFO)
    return


if hasattr(signal, 'SIGUSR1'):
    signal.signal(signal.SIGUSR1, signal_handler_sigusr1)
# end signal handlers


def configure_logging(log_level=None):
    """
    With a level, both package loggers go to stdout at that level. Otherwise
    the application logs INFO to stderr and the library only ERROR.
    """
    log_level_lib = log_level
    if log_level is None:
        logging_handler = logging.StreamHandler(sys.stderr)
        log_level = logging.INFO
        log_level_lib = logging.ERROR
    else:
        logging_handler = logging.StreamHandler(sys.stdout)
    logging_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    lunar_wpt_impl.logger.addHandler(logging_handler)

    # set the log levels
    lunar_wpt_impl.logger.setLevel(log_level)
    beamlink.logger.setLevel(log_level_lib)

    # inherit logging handlers in the library
    beamlink.logger.handlers = lunar_wpt_impl.logger.handlers


def parse_log_level(argv):
    """
    Split the leading '-d LEVEL' option off the subcommand arguments.
    """
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('-d', dest='log_level', type=int)
    args, rest = parser.parse_known_args(argv)
    return args.log_level, rest


if __name__ == "__main__":
    log_level, rest = parse_log_level(sys.argv[1:])
    configure_logging(log_level)

    from .main import cli

    sys.exit(cli(rest))
