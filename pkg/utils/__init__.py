# Shared helpers for the MBR toolkit
