# Command-line interface for the MBR toolkit
