// placeholder; real implementation lands with its module
