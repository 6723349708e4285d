from loguru import logger

# Library logging stays silent unless the command line asks for it.
logger.disable("normengine")
